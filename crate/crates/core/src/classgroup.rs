//! The group `E^{ℓ,t}` of coefficient-window classes and its cyclic
//! decomposition.
//!
//! Two monic polynomials are equivalent when their `ℓ` leading coefficients
//! and their `t` ending coefficients agree. Classes multiply through
//! polynomial products. The leading window behaves like the truncated power
//! series `1 + a_1 y + … + a_ℓ y^ℓ` in `y = 1/x` and the ending window like
//! `b_0 + b_1 x + … + b_{t-1} x^{t-1}` modulo `x^t`, so the product of two
//! classes only needs the two windows of each factor.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::{enumerate_monic, FieldElement, FieldSpec, Poly};

/// Largest group the decomposition will enumerate.
pub const MAX_GROUP_ORDER: u64 = 1_000_000;

const INVALID: u32 = u32::MAX;

/// An element of `E^{ℓ,t}`: `(a_1..a_ℓ)` and `(b_0..b_{t-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassLabel {
    pub leading: Vec<FieldElement>,
    pub ending: Vec<FieldElement>,
}

impl ClassLabel {
    pub fn new(leading: Vec<FieldElement>, ending: Vec<FieldElement>) -> Self {
        ClassLabel { leading, ending }
    }

    /// Build a label from element indices.
    pub fn from_indices(field: &FieldSpec, leading: &[u64], ending: &[u64]) -> Result<Self> {
        let conv = |v: &[u64]| v.iter().map(|&c| field.elem(c)).collect::<Result<Vec<_>>>();
        Ok(ClassLabel {
            leading: conv(leading)?,
            ending: conv(ending)?,
        })
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[FieldElement]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(&self.leading), join(&self.ending))
    }
}

/// `⟨f⟩` with respect to `(ℓ, t)`.
pub fn class_of(f: &Poly, ell: usize, t: usize) -> Result<ClassLabel> {
    let leading = f.leading_coeffs(ell)?;
    let ending = f.ending_coeffs(t)?;
    if t > 0 && ending[0].is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(ClassLabel { leading, ending })
}

/// The group `E^{ℓ,t}` over a fixed field, without a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    field: FieldSpec,
    ell: usize,
    t: usize,
}

impl ClassGroup {
    pub fn new(field: &FieldSpec, ell: usize, t: usize) -> Result<Self> {
        if ell + t == 0 {
            return Err(Error::OutOfRange("need ℓ + t ≥ 1".into()));
        }
        Ok(ClassGroup {
            field: field.clone(),
            ell,
            t,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `|E| = (q - ⟦t>0⟧) q^{ℓ+t-1}`.
    pub fn order(&self) -> Result<u64> {
        let q = self.field.q() as u64;
        let base = q - u64::from(self.t > 0);
        q.checked_pow((self.ell + self.t - 1) as u32)
            .and_then(|v| v.checked_mul(base))
            .ok_or(Error::Overflow("group order"))
    }

    pub fn identity(&self) -> ClassLabel {
        let mut ending = vec![FieldElement::ZERO; self.t];
        if self.t > 0 {
            ending[0] = FieldElement::ONE;
        }
        ClassLabel {
            leading: vec![FieldElement::ZERO; self.ell],
            ending,
        }
    }

    pub fn contains(&self, a: &ClassLabel) -> bool {
        let q = self.field.q();
        a.leading.len() == self.ell
            && a.ending.len() == self.t
            && a.leading.iter().chain(&a.ending).all(|c| c.index() < q)
            && (self.t == 0 || !a.ending[0].is_zero())
    }

    fn check(&self, a: &ClassLabel) -> Result<()> {
        if a.leading.len() != self.ell || a.ending.len() != self.t {
            return Err(Error::ParameterMismatch(format!(
                "label {a} does not have window sizes ({}, {})",
                self.ell, self.t
            )));
        }
        if !self.contains(a) {
            return Err(Error::NotInGroup(a.to_string()));
        }
        Ok(())
    }

    pub fn class_of(&self, f: &Poly) -> Result<ClassLabel> {
        if f.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        class_of(f, self.ell, self.t)
    }

    /// Truncated-series product of two windows.
    fn conv(&self, x: &[FieldElement], y: &[FieldElement], unit_head: bool) -> Vec<FieldElement> {
        let f = &self.field;
        let n = x.len();
        if unit_head {
            // (1 + x_1 y + …)(1 + y_1 y + …), stored without the leading 1
            (0..n)
                .map(|k| {
                    let mut acc = f.add(x[k], y[k]);
                    for j in 0..k {
                        acc = f.add(acc, f.mul(x[j], y[k - 1 - j]));
                    }
                    acc
                })
                .collect()
        } else {
            (0..n)
                .map(|k| (0..=k).fold(FieldElement::ZERO, |acc, j| f.add(acc, f.mul(x[j], y[k - j]))))
                .collect()
        }
    }

    /// `εε′`, the class of the product of any two representatives.
    pub fn mul(&self, a: &ClassLabel, b: &ClassLabel) -> Result<ClassLabel> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    fn mul_unchecked(&self, a: &ClassLabel, b: &ClassLabel) -> ClassLabel {
        ClassLabel {
            leading: self.conv(&a.leading, &b.leading, true),
            ending: self.conv(&a.ending, &b.ending, false),
        }
    }

    pub fn inv(&self, a: &ClassLabel) -> Result<ClassLabel> {
        self.check(a)?;
        Ok(self.inv_unchecked(a))
    }

    fn inv_unchecked(&self, a: &ClassLabel) -> ClassLabel {
        let f = &self.field;
        // leading: u_k = -(a_k + Σ_{j=1}^{k-1} a_j u_{k-j})
        let mut lead: Vec<FieldElement> = Vec::with_capacity(self.ell);
        for k in 0..self.ell {
            let mut acc = a.leading[k];
            for j in 0..k {
                acc = f.add(acc, f.mul(a.leading[j], lead[k - 1 - j]));
            }
            lead.push(f.neg(acc));
        }
        let mut end: Vec<FieldElement> = Vec::with_capacity(self.t);
        if self.t > 0 {
            let b0_inv = f.inv(a.ending[0]).expect("labels have a nonzero constant term");
            end.push(b0_inv);
            for k in 1..self.t {
                let mut acc = FieldElement::ZERO;
                for j in 1..=k {
                    acc = f.add(acc, f.mul(a.ending[j], end[k - j]));
                }
                end.push(f.neg(f.mul(acc, b0_inv)));
            }
        }
        ClassLabel {
            leading: lead,
            ending: end,
        }
    }

    /// `ε^k`; negative exponents go through the inverse.
    pub fn pow(&self, a: &ClassLabel, k: i64) -> Result<ClassLabel> {
        self.check(a)?;
        let base = if k < 0 { self.inv_unchecked(a) } else { a.clone() };
        Ok(self.pow_unchecked(&base, k.unsigned_abs()))
    }

    fn pow_unchecked(&self, a: &ClassLabel, mut k: u64) -> ClassLabel {
        let mut acc = self.identity();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_unchecked(&base, &base);
            }
        }
        acc
    }

    /// Monic polynomial of degree `ℓ + t` with the given windows and zero
    /// middle coefficients.
    pub fn representative(&self, a: &ClassLabel) -> Result<Poly> {
        self.check(a)?;
        let d = self.ell + self.t;
        let mut c = vec![FieldElement::ZERO; d + 1];
        c[d] = FieldElement::ONE;
        for (j, &v) in a.leading.iter().enumerate() {
            c[d - 1 - j] = v;
        }
        c[..self.t].copy_from_slice(&a.ending);
        Ok(Poly::new(&self.field, c))
    }

    /// Size of the dense key space `q^{ℓ+t}`.
    fn key_space(&self) -> usize {
        (self.field.q() as usize).pow((self.ell + self.t) as u32)
    }

    /// Dense key whose numeric order is the lexicographic order of
    /// `(leading, ending)`.
    fn key(&self, a: &ClassLabel) -> usize {
        let q = self.field.q() as usize;
        a.leading
            .iter()
            .chain(&a.ending)
            .fold(0, |acc, c| acc * q + c.index() as usize)
    }

    fn label_of_key(&self, mut key: usize) -> ClassLabel {
        let q = self.field.q() as usize;
        let n = self.ell + self.t;
        let mut digits = vec![FieldElement::ZERO; n];
        for i in (0..n).rev() {
            digits[i] = self.field.elem((key % q) as u64).expect("digit below q");
            key /= q;
        }
        let ending = digits.split_off(self.ell);
        ClassLabel {
            leading: digits,
            ending,
        }
    }

    /// All labels in lexicographic order.
    pub fn labels(&self) -> impl Iterator<Item = ClassLabel> + '_ {
        (0..self.key_space())
            .map(|k| self.label_of_key(k))
            .filter(|a| self.contains(a))
    }
}

/// A cyclic decomposition `E ≅ Z_{r_1} × … × Z_{r_f}` with its exponent table.
#[derive(Clone, Debug)]
pub struct GroupStructure {
    group: ClassGroup,
    generators: Vec<ClassLabel>,
    orders: Vec<u32>,
    order: u64,
    strides: Vec<u32>,
    code_of_key: Vec<u32>,
    key_of_code: Vec<u32>,
    degree_codes: Vec<Vec<u32>>,
}

/// Decompose `E^{ℓ,t}`, optionally with a prescribed basis.
pub fn decompose(
    field: &FieldSpec,
    ell: usize,
    t: usize,
    generator_override: Option<&[Poly]>,
) -> Result<GroupStructure> {
    let group = ClassGroup::new(field, ell, t)?;
    let order = group.order()?;
    if order > MAX_GROUP_ORDER {
        return Err(Error::GroupTooLarge(order));
    }
    let (generators, orders) = match generator_override {
        Some(polys) => {
            let gens = polys.iter().map(|f| group.class_of(f)).collect::<Result<Vec<_>>>()?;
            let orders = gens.iter().map(|g| element_order(&group, g, order)).collect::<Vec<_>>();
            (gens, orders)
        }
        None => default_basis(&group, order)?,
    };
    GroupStructure::from_basis(group, generators, orders, order)
}

fn element_order(group: &ClassGroup, g: &ClassLabel, bound: u64) -> u32 {
    let id = group.identity();
    let mut x = g.clone();
    let mut k = 1u64;
    while x != id && k <= bound {
        x = group.mul_unchecked(&x, g);
        k += 1;
    }
    k as u32
}

/// Greedy basis: the char-`p` part (order `q^{ℓ+t-1}` or `q^ℓ`) and the part
/// of order `q - 1` are handled separately; inside each, repeatedly take the
/// lexicographically first element of maximal order modulo the subgroup
/// built so far and correct it by a subgroup element so that the new cyclic
/// factor meets the subgroup trivially.
fn default_basis(group: &ClassGroup, order: u64) -> Result<(Vec<ClassLabel>, Vec<u32>)> {
    let q = group.field.q() as u64;
    let coprime = if group.t > 0 { q - 1 } else { 1 };
    let p_part = order / coprime;
    let labels: Vec<ClassLabel> = group.labels().collect();
    let id = group.identity();
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for (component_order, annihilator) in [(p_part, p_part), (coprime, coprime)] {
        if component_order == 1 {
            continue;
        }
        let members: Vec<&ClassLabel> = labels
            .iter()
            .filter(|a| group.pow_unchecked(a, annihilator) == id)
            .collect();
        if members.len() as u64 != component_order {
            return Err(Error::InvalidGenerators(format!(
                "component has {} elements, expected {component_order}",
                members.len()
            )));
        }
        let mut in_h: HashSet<usize> = HashSet::from([group.key(&id)]);
        let mut h_list = vec![id.clone()];
        while (h_list.len() as u64) < component_order {
            let mut best: Option<(&ClassLabel, u32, ClassLabel)> = None;
            for g in &members {
                if in_h.contains(&group.key(g)) {
                    continue;
                }
                let mut x = (*g).clone();
                let mut o = 1u32;
                while !in_h.contains(&group.key(&x)) {
                    x = group.mul_unchecked(&x, g);
                    o += 1;
                }
                if best.as_ref().is_none_or(|b| o > b.1) {
                    best = Some((g, o, x));
                }
            }
            let (g, o, g_pow) = best.expect("a non-member exists while H is proper");
            let target = group.inv_unchecked(&g_pow);
            let h = h_list
                .iter()
                .find(|h| group.pow_unchecked(h, o as u64) == target)
                .ok_or_else(|| Error::InvalidGenerators("no complement lift for greedy generator".into()))?;
            let g = group.mul_unchecked(g, h);
            let mut next = Vec::with_capacity(h_list.len() * o as usize);
            let mut step = id.clone();
            for _ in 0..o {
                for h in &h_list {
                    next.push(group.mul_unchecked(h, &step));
                }
                step = group.mul_unchecked(&step, &g);
            }
            in_h = next.iter().map(|a| group.key(a)).collect();
            h_list = next;
            gens.push(g);
            orders.push(o);
        }
    }
    Ok((gens, orders))
}

impl GroupStructure {
    fn from_basis(group: ClassGroup, generators: Vec<ClassLabel>, orders: Vec<u32>, order: u64) -> Result<Self> {
        let product = orders.iter().try_fold(1u64, |acc, &r| acc.checked_mul(r as u64));
        if product != Some(order) {
            return Err(Error::InvalidGenerators(format!(
                "generator orders {orders:?} multiply to {product:?}, expected |E| = {order}"
            )));
        }
        let mut strides = Vec::with_capacity(orders.len());
        let mut s = 1u32;
        for &r in &orders {
            strides.push(s);
            s *= r;
        }
        let mut code_of_key = vec![INVALID; group.key_space()];
        let mut key_of_code = vec![INVALID; order as usize];
        let mut elems: Vec<ClassLabel> = Vec::with_capacity(order as usize);
        for code in 0..order as u32 {
            let elem = if code == 0 {
                group.identity()
            } else {
                // lowest nonzero exponent position
                let j = (0..orders.len())
                    .find(|&j| (code / strides[j]) % orders[j] != 0)
                    .expect("nonzero code has a nonzero digit");
                group.mul_unchecked(&elems[(code - strides[j]) as usize], &generators[j])
            };
            let key = group.key(&elem);
            if code_of_key[key] != INVALID {
                return Err(Error::InvalidGenerators(format!(
                    "generators are not independent: {elem} is reached twice"
                )));
            }
            code_of_key[key] = code;
            key_of_code[code as usize] = key as u32;
            elems.push(elem);
        }
        let mut gs = GroupStructure {
            group,
            generators,
            orders,
            order,
            strides,
            code_of_key,
            key_of_code,
            degree_codes: Vec::new(),
        };
        gs.degree_codes = (1..gs.group.ell + gs.group.t)
            .map(|d| gs.enumerate_degree_codes(d))
            .collect::<Result<_>>()?;
        Ok(gs)
    }

    fn enumerate_degree_codes(&self, d: usize) -> Result<Vec<u32>> {
        let mut seen = vec![false; self.order as usize];
        for f in enumerate_monic(&self.group.field, d, None, None)? {
            if self.group.t > 0 && f.coeff(0).is_zero() {
                continue;
            }
            let code = self.code_of(&self.group.class_of(&f)?)?;
            seen[code as usize] = true;
        }
        Ok((0..self.order as u32).filter(|&c| seen[c as usize]).collect())
    }

    pub fn group(&self) -> &ClassGroup {
        &self.group
    }

    pub fn field(&self) -> &FieldSpec {
        &self.group.field
    }

    pub fn ell(&self) -> usize {
        self.group.ell
    }

    pub fn t(&self) -> usize {
        self.group.t
    }

    pub fn generators(&self) -> &[ClassLabel] {
        &self.generators
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Dense index of `ε` (mixed radix over the exponent vector, first
    /// generator least significant).
    pub fn code_of(&self, a: &ClassLabel) -> Result<u32> {
        self.group.check(a)?;
        match self.code_of_key[self.group.key(a)] {
            INVALID => Err(Error::NotInGroup(a.to_string())),
            c => Ok(c),
        }
    }

    pub fn label_of_code(&self, code: u32) -> ClassLabel {
        self.group.label_of_key(self.key_of_code[code as usize] as usize)
    }

    pub fn exponents_of_code(&self, code: u32) -> Vec<u32> {
        self.strides
            .iter()
            .zip(&self.orders)
            .map(|(&s, &r)| (code / s) % r)
            .collect()
    }

    pub fn code_of_exponents(&self, exps: &[u32]) -> u32 {
        exps.iter()
            .zip(&self.strides)
            .zip(&self.orders)
            .map(|((&e, &s), &r)| (e % r) * s)
            .sum()
    }

    /// `(e_1(ε), …, e_f(ε))` with `0 ≤ e_j < r_j`.
    pub fn exponent_of(&self, a: &ClassLabel) -> Result<Vec<u32>> {
        Ok(self.exponents_of_code(self.code_of(a)?))
    }

    /// `Π ξ_j^{e_j}`.
    pub fn from_exponents(&self, exps: &[u32]) -> ClassLabel {
        self.label_of_code(self.code_of_exponents(exps))
    }

    /// Codes of `E^{ℓ,t}(d)`, ascending.
    pub fn codes_of_degree(&self, d: usize) -> Vec<u32> {
        if d >= self.group.ell + self.group.t {
            (0..self.order as u32).collect()
        } else if d == 0 {
            vec![0]
        } else {
            self.degree_codes[d - 1].clone()
        }
    }

    /// `E^{ℓ,t}(d)`, the classes of monic polynomials of degree `d`.
    pub fn classes_of_degree(&self, d: usize) -> Vec<ClassLabel> {
        self.codes_of_degree(d)
            .into_iter()
            .map(|c| self.label_of_code(c))
            .collect()
    }

    /// Exponent-lattice product.
    pub fn mul_codes(&self, a: u32, b: u32) -> u32 {
        self.strides
            .iter()
            .zip(&self.orders)
            .map(|(&s, &r)| (((a / s) % r + (b / s) % r) % r) * s)
            .sum()
    }

    pub fn pow_code(&self, a: u32, k: u64) -> u32 {
        self.strides
            .iter()
            .zip(&self.orders)
            .map(|(&s, &r)| ((((a / s) % r) as u64 * (k % r as u64)) % r as u64) as u32 * s)
            .sum()
    }

    pub fn inv_code(&self, a: u32) -> u32 {
        self.strides
            .iter()
            .zip(&self.orders)
            .map(|(&s, &r)| ((r - (a / s) % r) % r) * s)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(f: &FieldSpec, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    fn reference_e12_q3() -> GroupStructure {
        let f3 = FieldSpec::prime(3).unwrap();
        decompose(&f3, 1, 2, Some(&[lit(&f3, "11"), lit(&f3, "1012")])).unwrap()
    }

    fn reference_e23_q2() -> GroupStructure {
        let f2 = FieldSpec::prime(2).unwrap();
        decompose(&f2, 2, 3, Some(&[lit(&f2, "11"), lit(&f2, "100011")])).unwrap()
    }

    #[test]
    fn class_of_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let g = ClassGroup::new(&f2, 1, 2).unwrap();
        let xi1 = g.class_of(&lit(&f2, "11")).unwrap();
        assert_eq!(g.class_of(&lit(&f2, "111")).unwrap(), xi1);
        assert_eq!(g.class_of(&lit(&f2, "101")).unwrap(), g.identity());
        let l = class_of(&lit(&f2, "100011"), 2, 3).unwrap();
        assert_eq!(l, ClassLabel::from_indices(&f2, &[0, 0], &[1, 1, 0]).unwrap());
        assert_eq!(class_of(&lit(&f2, "110"), 1, 2), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn class_mul_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let g = ClassGroup::new(&f2, 1, 2).unwrap();
        let xi1 = g.class_of(&lit(&f2, "11")).unwrap();
        assert_eq!(g.mul(&xi1, &xi1).unwrap(), g.identity());
        assert_eq!(g.mul(&xi1, &g.identity()).unwrap(), xi1);
        let f3 = FieldSpec::prime(3).unwrap();
        let g3 = ClassGroup::new(&f3, 1, 2).unwrap();
        let xi1 = g3.class_of(&lit(&f3, "11")).unwrap();
        assert_eq!(g3.pow(&xi1, 3).unwrap(), g3.identity());
        let other = ClassGroup::new(&f3, 2, 2).unwrap().identity();
        assert!(matches!(g3.mul(&xi1, &other), Err(Error::ParameterMismatch(_))));
    }

    #[test]
    fn pow_and_inverse() {
        let gs = reference_e12_q3();
        let g = gs.group();
        let xi2 = gs.generators()[1].clone();
        assert_eq!(g.pow(&xi2, 6).unwrap(), g.identity());
        assert_ne!(g.pow(&xi2, 3).unwrap(), g.identity());
        assert_eq!(g.pow(&xi2, 0).unwrap(), g.identity());
        assert_eq!(g.pow(&xi2, -1).unwrap(), g.inv(&xi2).unwrap());
        let e23 = reference_e23_q2();
        let xi1 = e23.generators()[0].clone();
        assert_eq!(e23.group().inv(&xi1).unwrap(), e23.group().pow(&xi1, 3).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let gs = decompose(&f2, 1, 2, None).unwrap();
        assert_eq!(gs.orders(), &[2, 2]);
        let gs = reference_e12_q3();
        assert_eq!(gs.orders(), &[3, 6]);
        let gs = reference_e23_q2();
        assert_eq!(gs.order(), 16);
        assert_eq!(gs.orders(), &[4, 4]);
        // x+1 alone cannot generate E^{2,3}
        assert!(matches!(
            decompose(&f2, 2, 3, Some(&[lit(&f2, "11")])),
            Err(Error::InvalidGenerators(_))
        ));
        // dependent pair: ξ_1 and ξ_1^2
        assert!(decompose(&f2, 2, 3, Some(&[lit(&f2, "11"), lit(&f2, "101")])).is_err());
    }

    #[test]
    fn exponent_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let e12 = decompose(&f2, 1, 2, Some(&[lit(&f2, "11"), lit(&f2, "1011")])).unwrap();
        assert_eq!(e12.exponent_of(&e12.group().identity()).unwrap(), vec![0, 0]);
        let l = e12.group().class_of(&lit(&f2, "1101")).unwrap();
        assert_eq!(e12.exponent_of(&l).unwrap(), vec![1, 1]);
        let e23 = reference_e23_q2();
        assert_eq!(e23.exponent_of(&e23.generators()[0]).unwrap(), vec![1, 0]);
        let bad = ClassLabel::from_indices(&f2, &[0, 0], &[0, 1, 0]).unwrap();
        assert!(matches!(e23.exponent_of(&bad), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn classes_of_degree_examples() {
        let e23 = reference_e23_q2();
        let as_exps = |d| {
            let mut v: Vec<Vec<u32>> = e23
                .classes_of_degree(d)
                .iter()
                .map(|a| e23.exponent_of(a).unwrap())
                .collect();
            v.sort();
            v
        };
        assert_eq!(as_exps(1), vec![vec![1, 0]]);
        assert_eq!(as_exps(2), vec![vec![2, 0], vec![3, 0]]);
        assert_eq!(as_exps(3), vec![vec![0, 0], vec![1, 1], vec![2, 3], vec![3, 0]]);
        let mut e4 = as_exps(4);
        e4.sort();
        let mut expect = vec![
            vec![0, 0],
            vec![1, 3],
            vec![1, 0],
            vec![2, 0],
            vec![2, 1],
            vec![3, 3],
            vec![3, 0],
            vec![0, 1],
        ];
        expect.sort();
        assert_eq!(e4, expect);
        let f2 = FieldSpec::prime(2).unwrap();
        let e12 = decompose(&f2, 1, 2, None).unwrap();
        assert_eq!(e12.classes_of_degree(2).len(), 2);
    }

    #[test]
    fn q3_degree_listings() {
        let gs = reference_e12_q3();
        let mut e1: Vec<Vec<u32>> = gs
            .classes_of_degree(1)
            .iter()
            .map(|a| gs.exponent_of(a).unwrap())
            .collect();
        e1.sort();
        assert_eq!(e1, vec![vec![1, 0], vec![2, 3]]);
        let mut e2: Vec<Vec<u32>> = gs
            .classes_of_degree(2)
            .iter()
            .map(|a| gs.exponent_of(a).unwrap())
            .collect();
        e2.sort();
        assert_eq!(
            e2,
            vec![vec![0, 0], vec![0, 3], vec![1, 0], vec![1, 5], vec![2, 0], vec![2, 1]]
        );
    }

    #[test]
    fn degree_set_sizes_and_full_degree() {
        for q in [2u64, 3, 4, 5] {
            let f = FieldSpec::with_order(q).unwrap();
            for (ell, t) in [(1, 0), (0, 2), (1, 2), (2, 1), (2, 2), (3, 0)] {
                let gs = decompose(&f, ell, t, None).unwrap();
                assert_eq!(gs.orders().iter().map(|&r| r as u64).product::<u64>(), gs.order());
                for d in 1..ell + t {
                    let expect = (q - u64::from(t > 0)) * q.pow(d as u32 - 1);
                    assert_eq!(
                        gs.classes_of_degree(d).len() as u64,
                        expect,
                        "q={q} ℓ={ell} t={t} d={d}"
                    );
                }
                assert_eq!(gs.classes_of_degree(ell + t).len() as u64, gs.order());
            }
        }
    }

    #[test]
    fn representative_degree_independence() {
        let f3 = FieldSpec::prime(3).unwrap();
        let g = ClassGroup::new(&f3, 2, 2).unwrap();
        let labels: Vec<ClassLabel> = g.labels().collect();
        let a = &labels[7];
        let b = &labels[29];
        let ra = g.representative(a).unwrap();
        // degree ℓ+t+3 representative of b with nonzero middle coefficients
        let mut c = vec![FieldElement::ZERO; 8];
        c[7] = FieldElement::ONE;
        c[6] = b.leading[0];
        c[5] = b.leading[1];
        c[0] = b.ending[0];
        c[1] = b.ending[1];
        c[2] = f3.from_int(2);
        c[3] = f3.from_int(1);
        c[4] = f3.from_int(2);
        let rb = Poly::new(&f3, c);
        assert_eq!(g.class_of(&rb).unwrap(), *b);
        let prod = g.class_of(&ra.mul(&rb).unwrap()).unwrap();
        assert_eq!(prod, g.mul(a, b).unwrap());
    }

    #[test]
    fn serde_shape() {
        let f2 = FieldSpec::prime(2).unwrap();
        let l = ClassLabel::from_indices(&f2, &[1], &[1, 0]).unwrap();
        assert_eq!(serde_json::to_string(&l).unwrap(), r#"{"leading":[1],"ending":[1,0]}"#);
    }
}
