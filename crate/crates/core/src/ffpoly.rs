//! Finite fields `F_q` (`q = p^r`) and dense polynomials over them.
//!
//! Field elements are stored as a single index in `[0, q)`: the base-`p`
//! digits of the index, least significant first, are the coordinates of the
//! element in the power basis `1, y, …, y^{r-1}` of `F_p[y]/(m(y))`. For prime
//! fields the index is the residue itself, and the prime subfield is always
//! the set of indices below `p`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

const MAX_FIELD_ORDER: u64 = 1 << 16;

/// An element of `F_q`, encoded as an index in `[0, q)`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Unchecked construction for indices already known to be in range.
    pub(crate) fn from_index(i: u32) -> Self {
        FieldElement(i)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldInner {
    p: u32,
    r: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    /// `exp[k] = g^k` for a fixed primitive element `g`, `k < q - 1`.
    exp: Vec<u32>,
    /// Discrete log base `g`; entry 0 is unused.
    log: Vec<u32>,
}

/// Description of the finite field `F_q` with `q = p^r`.
///
/// Cloning is cheap; the arithmetic tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.r == other.inner.r
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.inner.p)
            .field("r", &self.inner.r)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_{p^r}`. When `r > 1` and no modulus is given, the first monic
    /// irreducible polynomial of degree `r` in lexicographic order is used.
    /// The modulus is given ascending from the constant term.
    pub fn new(p: u32, r: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if r == 0 {
            return Err(Error::OutOfRange("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(r)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge((p as u64).saturating_pow(r)))?;
        let modulus = if r == 1 {
            if modulus.is_some() {
                return Err(Error::InvalidModulus("prime fields take no modulus".into()));
            }
            None
        } else {
            let base = FieldSpec::prime(p)?;
            let m = match modulus {
                Some(m) => {
                    let poly = Poly::from_ints(&base, &m.iter().map(|&c| c as i64).collect::<Vec<_>>());
                    if m.iter().any(|&c| c >= p) || poly.degree() != Some(r as usize) || !poly.is_monic() {
                        return Err(Error::InvalidModulus(format!(
                            "expected a monic polynomial of degree {r} with coefficients below {p}"
                        )));
                    }
                    if !poly.is_irreducible()? {
                        return Err(Error::InvalidModulus("modulus is reducible".into()));
                    }
                    m
                }
                None => find_modulus(&base, r as usize)?,
            };
            Some(m)
        };
        let (exp, log) = build_log_tables(p, r, q as u32, modulus.as_deref());
        Ok(FieldSpec {
            inner: Arc::new(FieldInner {
                p,
                r,
                q: q as u32,
                modulus,
                exp,
                log,
            }),
        })
    }

    /// The field with `q` elements, choosing the default modulus when `q` is
    /// not prime.
    pub fn with_order(q: u64) -> Result<Self> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let factors = prime_factors(q);
        if q < 2 || factors.len() != 1 {
            return Err(Error::NotPrimePower(q));
        }
        let p = factors[0];
        let mut r = 0;
        let mut m = q;
        while m > 1 {
            m /= p;
            r += 1;
        }
        Self::new(p as u32, r, None)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn r(&self) -> u32 {
        self.inner.r
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.inner.modulus.as_deref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.r == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element with the given index.
    pub fn elem(&self, index: u64) -> Result<FieldElement> {
        if index < self.inner.q as u64 {
            Ok(FieldElement(index as u32))
        } else {
            Err(Error::InvalidElement {
                value: index,
                q: self.inner.q,
            })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        let p = self.inner.p;
        if coords.len() != self.inner.r as usize || coords.iter().any(|&c| c >= p) {
            return Err(Error::Parse(format!("expected {} residues below {}", self.inner.r, p)));
        }
        Ok(FieldElement(coords.iter().rev().fold(0, |acc, &c| acc * p + c)))
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        let p = self.inner.p;
        let mut v = a.0;
        (0..self.inner.r)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.inner.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.r == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.r == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.inner.r == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.inner.p as u64) as u32);
        }
        let n = self.inner.q - 1;
        let k = self.inner.log[a.0 as usize] + self.inner.log[b.0 as usize];
        FieldElement(self.inner.exp[(if k >= n { k - n } else { k }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.inner.q - 1;
        let k = self.inner.log[a.0 as usize];
        Ok(FieldElement(self.inner.exp[((n - k) % n) as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.inner.q - 1) as u64;
        let k = (self.inner.log[a.0 as usize] as u64 * (e % n)) % n;
        FieldElement(self.inner.exp[k as usize])
    }
}

/// Multiply two elements of `F_p[y]/(m)` given by index; used only while the
/// log tables are being built.
fn slow_ext_mul(p: u32, r: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let digits = |mut v: u32| {
        (0..r)
            .map(|_| {
                let c = v % p;
                v /= p;
                c as u64
            })
            .collect::<Vec<u64>>()
    };
    let (x, y) = (digits(a), digits(b));
    let r = r as usize;
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * r - 1];
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + xi * yj) % p64;
        }
    }
    for k in (r..prod.len()).rev() {
        let c = prod[k];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate().take(r) {
                let idx = k - r + i;
                prod[idx] = (prod[idx] + c * (p64 - m as u64)) % p64;
            }
            prod[k] = 0;
        }
    }
    prod[..r].iter().rev().fold(0, |acc, &c| acc * p + c as u32)
}

fn build_log_tables(p: u32, r: u32, q: u32, modulus: Option<&[u32]>) -> (Vec<u32>, Vec<u32>) {
    let mul = |a: u32, b: u32| -> u32 {
        match modulus {
            None => ((a as u64 * b as u64) % p as u64) as u32,
            Some(m) => slow_ext_mul(p, r, m, a, b),
        }
    };
    let n = q - 1;
    let factors = prime_factors(n as u64);
    let pow = |g: u32, mut e: u64| {
        let (mut base, mut acc) = (g, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&s| pow(g, n as u64 / s) != 1))
        .expect("the multiplicative group of a finite field is cyclic");
    let mut exp = Vec::with_capacity(n as usize);
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for k in 0..n {
        exp.push(x);
        log[x as usize] = k;
        x = mul(x, generator);
    }
    (exp, log)
}

fn find_modulus(base: &FieldSpec, r: usize) -> Result<Vec<u32>> {
    for f in enumerate_monic(base, r, None, None)? {
        if f.is_irreducible()? {
            return Ok(f.coeffs.iter().map(|c| c.0).collect());
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Dense polynomial over `F_q`, coefficients ascending from the constant
/// term. The zero polynomial has no stored coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Coefficients given as integers mapped into the prime subfield.
    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Coefficients given as field-element indices, ascending.
    pub fn from_indices(field: &FieldSpec, coeffs: &[u64]) -> Result<Self> {
        let c = coeffs.iter().map(|&c| field.elem(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, c))
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: vec![FieldElement::ONE],
        }
    }

    pub fn x(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: vec![FieldElement::ZERO, FieldElement::ONE],
        }
    }

    /// Parse a polynomial literal: either a digit string, most significant
    /// coefficient first (prime fields with `p ≤ 9`), or a JSON array of
    /// element indices ascending from the constant term.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('[') {
            let ints: Vec<u64> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            return Self::from_indices(field, &ints);
        }
        if !field.is_prime_field() || field.p() > 9 {
            return Err(Error::Parse("digit literals need a prime field with p ≤ 9".into()));
        }
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial literal".into()));
        }
        let mut coeffs = Vec::with_capacity(text.len());
        for ch in text.chars().rev() {
            let d = ch
                .to_digit(10)
                .filter(|&d| d < field.p())
                .ok_or_else(|| Error::Parse(format!("invalid digit {ch:?} for F_{}", field.p())))?;
            coeffs.push(FieldElement(d));
        }
        Ok(Self::new(field, coeffs))
    }

    /// The literal form accepted by [`Poly::parse`].
    pub fn to_literal(&self) -> String {
        if self.field.is_prime_field() && self.field.p() <= 9 && !self.coeffs.is_empty() {
            self.coeffs.iter().rev().map(|c| char::from(b'0' + c.0 as u8)).collect()
        } else {
            let v: Vec<u32> = self.coeffs.iter().map(|c| c.0).collect();
            serde_json::to_string(&v).expect("integer vectors serialize")
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `[x^i] f`, zero above the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FieldElement::ONE)
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn require_monic_nonconstant(&self) -> Result<usize> {
        match self.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(_) if !self.is_monic() => Err(Error::NotMonic),
            Some(0) => Err(Error::ConstantPolynomial),
            Some(d) => Ok(d),
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, c))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, c))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = f.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (i, &m) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(c, m));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    fn make_monic(self) -> Result<Poly> {
        match self.coeffs.last() {
            None => Ok(self),
            Some(&lead) => {
                let f = self.field.clone();
                let inv = f.inv(lead)?;
                Ok(Poly::new(&f, self.coeffs.iter().map(|&c| f.mul(c, inv)).collect()))
            }
        }
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// The reciprocal `f*(x) = x^{deg f} f(1/x)`.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Poly::new(&self.field, self.coeffs.iter().rev().copied().collect()))
    }

    pub fn is_self_reciprocal(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let c = &self.coeffs;
        Ok(c.iter().eq(c.iter().rev()))
    }

    /// Rabin's test: `f` of degree `d` is irreducible iff `x^{q^d} ≡ x mod f`
    /// and `gcd(x^{q^{d/s}} - x, f) = 1` for each prime `s | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = self.require_monic_nonconstant()?;
        if d == 1 {
            return Ok(true);
        }
        let field = &self.field;
        let q = field.q() as u64;
        let x = Poly::x(field);
        // frob[i] = x^{q^i} mod f
        let mut frob = Vec::with_capacity(d + 1);
        frob.push(x.clone());
        for i in 1..=d {
            let next = frob[i - 1].pow_mod(q, self)?;
            frob.push(next);
        }
        if frob[d] != x {
            return Ok(false);
        }
        for s in prime_factors(d as u64) {
            let h = frob[d / s as usize].sub(&x)?;
            if h.gcd(self)?.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `[x^{deg-j}] f` for `j = 1..=ell`; positions below zero read as 0.
    pub fn leading_coeffs(&self, ell: usize) -> Result<Vec<FieldElement>> {
        let d = self.require_monic_nonconstant()?;
        Ok((1..=ell)
            .map(|j| d.checked_sub(j).map_or(FieldElement::ZERO, |i| self.coeffs[i]))
            .collect())
    }

    /// `[x^j] f` for `j = 0..t`.
    pub fn ending_coeffs(&self, t: usize) -> Result<Vec<FieldElement>> {
        self.require_monic_nonconstant()?;
        Ok((0..t).map(|j| self.coeff(j)).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coef = if c.0 == 1 && i > 0 {
                String::new()
            } else {
                c.0.to_string()
            };
            match i {
                0 => write!(f, "{}", c.0)?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Monic polynomials of a fixed degree with prescribed leading and ending
/// windows, in lexicographic order of the free coefficients (highest free
/// position most significant).
pub struct MonicIter {
    field: FieldSpec,
    template: Vec<FieldElement>,
    free: Vec<usize>,
    done: bool,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let out = Poly::new(&self.field, self.template.clone());
        // odometer: lowest free position spins fastest
        let q = self.field.q();
        let mut carry = true;
        for &pos in &self.free {
            let v = self.template[pos].0 + 1;
            if v < q {
                self.template[pos] = FieldElement(v);
                carry = false;
                break;
            }
            self.template[pos] = FieldElement::ZERO;
        }
        if carry {
            self.done = true;
        }
        Some(out)
    }
}

/// Every monic polynomial of degree `d` whose `ℓ` leading coefficients are
/// `leading` and whose `t` ending coefficients are `ending`.
pub fn enumerate_monic(
    field: &FieldSpec,
    d: usize,
    leading: Option<&[FieldElement]>,
    ending: Option<&[FieldElement]>,
) -> Result<MonicIter> {
    let leading = leading.unwrap_or(&[]);
    let ending = ending.unwrap_or(&[]);
    let (ell, t) = (leading.len(), ending.len());
    if ell > d || t > d || ell + t > d {
        return Err(Error::OverlappingWindows { ell, t, degree: d });
    }
    let mut template = vec![FieldElement::ZERO; d + 1];
    template[d] = FieldElement::ONE;
    for (j, &a) in leading.iter().enumerate() {
        template[d - 1 - j] = a;
    }
    template[..t].copy_from_slice(ending);
    for &c in leading.iter().chain(ending) {
        field.elem(c.0 as u64)?;
    }
    let free = (t..d - ell).collect();
    Ok(MonicIter {
        field: field.clone(),
        template,
        free,
        done: false,
    })
}
