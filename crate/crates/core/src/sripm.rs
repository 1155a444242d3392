//! Self-reciprocal irreducible monic polynomials with prescribed leading
//! coefficients.
//!
//! `S_q(n; c)` counts SRIM polynomials of degree `2n` (half-degree
//! convention). Every such `f` is `x^n g(x + 1/x)` for a monic `g` of degree
//! `n`, and `f` is irreducible exactly when `g` is irreducible and does not
//! split as `h h* / h(0)`. This turns `S_q(n; c)` into counts of irreducible
//! polynomials with prescribed leading (and ending) coefficients:
//!
//! `2 S(n;c) = ⟦2|n⟧ Σ_a ⟦ψ_{(1,a)}(a) = c⟧ S(n/2;a) + 2 I(n;φ_n⁻¹(c)) - Σ_b I(n;ψ_b⁻¹(c), b)`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::checked_pow;
use crate::charsum::{
    divisors, i_total, i_trace, mobius, power_sum, round_count, CharPoly, CharSumEngine, CountResult,
};
use crate::classgroup::{decompose, ClassLabel, GroupStructure};
use crate::error::{Error, Result};
use crate::ffpoly::{FieldElement, FieldSpec, Poly};
use crate::oracle::brute_s;

/// `θ = arccos(1/(2√2))`, the argument of the roots of `1 + z + 2z²`.
pub fn theta() -> f64 {
    (1.0 / (2.0 * 2f64.sqrt())).acos()
}

/// `θ₁ = arccos(1/(2√3))`, from `1 - z + 3z²`.
pub fn theta1() -> f64 {
    (1.0 / (2.0 * 3f64.sqrt())).acos()
}

/// `θ₂ = arccos(1/√3)`, from `1 + 2z + 3z²`.
pub fn theta2() -> f64 {
    (1.0 / 3f64.sqrt()).acos()
}

/// `C(n, k) mod p` by Lucas' theorem; zero for negative `n`.
fn binom_mod_p(n: i64, k: u64, p: u64) -> u64 {
    if n < 0 {
        return 0;
    }
    let (mut n, mut k) = (n as u64, k);
    let mut acc = 1u64;
    while k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        // C(ni, ki) with ni < p, so every denominator is a unit
        let mut num = 1u64;
        let mut den = 1u64;
        for j in 0..ki {
            num = num * ((ni - j) % p) % p;
            den = den * ((j + 1) % p) % p;
        }
        acc = acc * num % p * pow_mod(den, p - 2, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn binom_elem(field: &FieldSpec, n: i64, k: u64) -> FieldElement {
    field.from_int(binom_mod_p(n, k, field.p() as u64) as i64)
}

/// `φ_d`: the leading coefficients `(g_1..g_ℓ)` of `g` to those of
/// `f = x^d g(x + 1/x)`, `f_k = Σ_{j ≤ k/2} C(d+2j-k, j) g_{k-2j}` with `g_0 = 1`.
pub fn phi_map(field: &FieldSpec, d: u32, g: &[FieldElement]) -> Vec<FieldElement> {
    let at = |m: usize| if m == 0 { FieldElement::ONE } else { g[m - 1] };
    (1..=g.len())
        .map(|k| {
            (0..=k / 2).fold(FieldElement::ZERO, |acc, j| {
                let c = binom_elem(field, d as i64 + 2 * j as i64 - k as i64, j as u64);
                field.add(acc, field.mul(c, at(k - 2 * j)))
            })
        })
        .collect()
}

/// `φ_d⁻¹` by the triangular recursion `g_k = f_k - Σ_{0<j≤k/2} C(d+2j-k, j) g_{k-2j}`.
pub fn phi_inverse(field: &FieldSpec, d: u32, f: &[FieldElement]) -> Vec<FieldElement> {
    let mut g: Vec<FieldElement> = Vec::with_capacity(f.len());
    for k in 1..=f.len() {
        let mut acc = f[k - 1];
        for j in 1..=k / 2 {
            let m = k - 2 * j;
            let gm = if m == 0 { FieldElement::ONE } else { g[m - 1] };
            let c = binom_elem(field, d as i64 + 2 * j as i64 - k as i64, j as u64);
            acc = field.sub(acc, field.mul(c, gm));
        }
        g.push(acc);
    }
    g
}

fn check_psi_args(field: &FieldSpec, b: &[FieldElement], v: &[FieldElement]) -> Result<FieldElement> {
    if b.len() != v.len() + 1 {
        return Err(Error::ParameterMismatch(format!(
            "ψ needs {} ending coefficients, got {}",
            v.len() + 1,
            b.len()
        )));
    }
    field
        .inv(b[0])
        .map_err(|_| Error::OutOfRange("ψ_b needs b_0 ≠ 0".into()))
}

/// `ψ_b(a)`: `c_k = a_k + b_0⁻¹ b_k + b_0⁻¹ Σ_{j=1}^{k-1} a_j b_{k-j}`.
pub fn psi_map(field: &FieldSpec, b: &[FieldElement], a: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let b0_inv = check_psi_args(field, b, a)?;
    Ok((1..=a.len())
        .map(|k| {
            let conv = (1..k).fold(b[k], |acc, j| field.add(acc, field.mul(a[j - 1], b[k - j])));
            field.add(a[k - 1], field.mul(b0_inv, conv))
        })
        .collect())
}

/// `ψ_b⁻¹(c)`.
pub fn psi_inverse(field: &FieldSpec, b: &[FieldElement], c: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let b0_inv = check_psi_args(field, b, c)?;
    let mut a: Vec<FieldElement> = Vec::with_capacity(c.len());
    for k in 1..=c.len() {
        let conv = (1..k).fold(b[k], |acc, j| field.add(acc, field.mul(a[j - 1], b[k - j])));
        a.push(field.sub(c[k - 1], field.mul(b0_inv, conv)));
    }
    Ok(a)
}

/// All vectors of `F_q^len` in lexicographic order.
pub fn vectors(field: &FieldSpec, len: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let q = field.q() as u64;
    let total = q.checked_pow(len as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut idx| {
        let mut v = vec![FieldElement::ZERO; len];
        for slot in v.iter_mut().rev() {
            *slot = field.elem(idx % q).expect("digit below q");
            idx /= q;
        }
        v
    })
}

/// A request for `S_q(n; c)`: SRIM polynomials of degree `2n` whose leading
/// coefficients are `leading`.
#[derive(Clone, Debug, PartialEq)]
pub struct SrimQuery {
    pub field: FieldSpec,
    pub n: u32,
    pub leading: Vec<FieldElement>,
}

impl SrimQuery {
    pub fn new(field: &FieldSpec, n: u32, leading: Vec<FieldElement>) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("half-degree n must be at least 1".into()));
        }
        for c in &leading {
            field.elem(c.index() as u64)?;
        }
        Ok(SrimQuery {
            field: field.clone(),
            n,
            leading,
        })
    }

    pub fn ell(&self) -> usize {
        self.leading.len()
    }

    /// Whether the count goes through the recursion rather than enumeration.
    pub fn uses_engine(&self) -> bool {
        self.n > 1 && 2 * self.ell() <= self.n as usize
    }
}

/// The three pieces of the recursion for one `(n, c)`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct RecursionTerms {
    /// `I(n; φ_n⁻¹(c))`.
    pub i_phi: u64,
    /// `Σ_b I(n; ψ_b⁻¹(c), b)` over `b ∈ F_q^{ℓ+1}` with `b_0 ≠ 0`.
    pub psi_sum: u64,
    /// `Σ_a ⟦ψ_{(1,a)}(a) = c⟧ S(n/2; a)`, zero for odd `n`.
    pub self_square: u64,
    pub residual: f64,
}

impl RecursionTerms {
    pub fn count(&self) -> Result<u64> {
        let twice = self.self_square as i128 + 2 * self.i_phi as i128 - self.psi_sum as i128;
        if twice < 0 {
            return Err(Error::NegativeCount(twice as i64));
        }
        if twice % 2 != 0 {
            return Err(Error::Integrality {
                residual: 0.5,
                tolerance: 0.0,
            });
        }
        Ok((twice / 2) as u64)
    }
}

/// Counts `S_q(n; c)` for one field, caching a character-sum engine per
/// class group.
pub struct SrimCounter {
    field: FieldSpec,
    tolerance: f64,
    engines: Mutex<HashMap<(usize, usize), Arc<CharSumEngine>>>,
}

impl SrimCounter {
    pub fn new(field: &FieldSpec, tolerance: f64) -> Self {
        SrimCounter {
            field: field.clone(),
            tolerance,
            engines: Mutex::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// The engine for `E^{ℓ,t}` with the default basis.
    pub fn engine(&self, ell: usize, t: usize) -> Result<Arc<CharSumEngine>> {
        let mut engines = self.engines.lock().expect("engine cache poisoned");
        if let Some(e) = engines.get(&(ell, t)) {
            return Ok(e.clone());
        }
        let group = decompose(&self.field, ell, t, None)?;
        let e = Arc::new(CharSumEngine::new(Arc::new(group), self.tolerance));
        engines.insert((ell, t), e.clone());
        Ok(e)
    }

    /// Use a prepared engine (for instance one built on a custom basis).
    pub fn install_engine(&self, engine: Arc<CharSumEngine>) -> Result<()> {
        let g = engine.group();
        if g.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let key = (g.ell(), g.t());
        self.engines.lock().expect("engine cache poisoned").insert(key, engine);
        Ok(())
    }

    pub fn query(&self, q: &SrimQuery) -> Result<CountResult> {
        if q.field != self.field {
            return Err(Error::FieldMismatch);
        }
        self.s_count(q.n, &q.leading)
    }

    /// `S_q(n; c)`.
    pub fn s_count(&self, n: u32, leading: &[FieldElement]) -> Result<CountResult> {
        let query = SrimQuery::new(&self.field, n, leading.to_vec())?;
        if !query.uses_engine() {
            let r = brute_s(&self.field, 2 * n as usize, leading)?;
            return Ok(CountResult::exact(r.count));
        }
        let terms = self.recursion_terms(n, leading)?;
        Ok(CountResult {
            count: terms.count()?,
            residual: terms.residual,
        })
    }

    /// The recursion terms at `(n, c)`; requires `n > 1` and `2ℓ ≤ n`.
    pub fn recursion_terms(&self, n: u32, c: &[FieldElement]) -> Result<RecursionTerms> {
        let query = SrimQuery::new(&self.field, n, c.to_vec())?;
        if !query.uses_engine() {
            return Err(Error::OutOfRange(format!(
                "recursion needs n > 1 and 2ℓ ≤ n, got n={n}, ℓ={}",
                c.len()
            )));
        }
        let ell = c.len();
        let mut residual: f64 = 0.0;
        let (i_phi, psi_sum) = if ell == 0 {
            // every irreducible of degree n ≥ 2 has a nonzero constant term
            let total = i_total(&self.field, n)?.count;
            (total, total)
        } else {
            let lead = self.engine(ell, 0)?;
            let label = ClassLabel::new(phi_inverse(&self.field, n, c), Vec::new());
            let r = lead.i_count(n, &label)?;
            residual = residual.max(r.residual);
            let both = self.engine(ell, ell + 1)?;
            let mut sum = 0u64;
            for b in vectors(&self.field, ell + 1).filter(|b| !b[0].is_zero()) {
                let a = psi_inverse(&self.field, &b, c)?;
                let s = both.i_count(n, &ClassLabel::new(a, b))?;
                residual = residual.max(s.residual);
                sum += s.count;
            }
            (r.count, sum)
        };
        let mut self_square = 0u64;
        if n.is_multiple_of(2) {
            for a in vectors(&self.field, ell) {
                let mut b = Vec::with_capacity(ell + 1);
                b.push(FieldElement::ONE);
                b.extend_from_slice(&a);
                if psi_map(&self.field, &b, &a)? == c {
                    let s = self.s_count(n / 2, &a)?;
                    residual = residual.max(s.residual);
                    self_square += s.count;
                }
            }
        }
        Ok(RecursionTerms {
            i_phi,
            psi_sum,
            self_square,
            residual,
        })
    }
}

fn is_power_of_two(n: u32) -> bool {
    n.is_power_of_two()
}

/// `S_q(n)`, the number of SRIM polynomials of degree `2n`.
pub fn s_total(field: &FieldSpec, n: u32) -> Result<CountResult> {
    if n == 0 {
        return Err(Error::OutOfRange("half-degree n must be at least 1".into()));
    }
    let q = field.q() as u64;
    let num = if is_power_of_two(n) {
        checked_pow(q, n)? + i128::from(q.is_multiple_of(2)) - 1
    } else {
        let mut acc: i128 = 0;
        for j in divisors(n as u64).into_iter().filter(|j| j % 2 == 1) {
            acc = acc
                .checked_add(mobius(j) as i128 * checked_pow(q, n / j as u32)?)
                .ok_or(Error::Overflow("S_total"))?;
        }
        acc
    };
    exact_div(num, 2 * n as i128)
}

/// `S_q(n)` by `S(n) = ½ ⟦2|n⟧ S(n/2) + ½ I(n)` from `S_q(1)`.
pub fn s_total_recursive(field: &FieldSpec, n: u32) -> Result<CountResult> {
    if n == 0 {
        return Err(Error::OutOfRange("half-degree n must be at least 1".into()));
    }
    if n == 1 {
        let q = field.q() as u64;
        return Ok(CountResult::exact(if q.is_multiple_of(2) {
            q / 2
        } else {
            (q - 1) / 2
        }));
    }
    let half = if n.is_multiple_of(2) {
        s_total_recursive(field, n / 2)?.count as i128
    } else {
        0
    };
    exact_div(half + i_total(field, n)?.count as i128, 2)
}

fn exact_div(num: i128, den: i128) -> Result<CountResult> {
    if num % den != 0 {
        return Err(Error::Integrality {
            residual: (num % den) as f64 / den as f64,
            tolerance: 0.0,
        });
    }
    let v = num / den;
    if v < 0 {
        return Err(Error::NegativeCount(v as i64));
    }
    u64::try_from(v)
        .map(CountResult::exact)
        .map_err(|_| Error::Overflow("count"))
}

/// Round an exact integer part plus a real correction over `den`.
fn closed_count(exact: i128, correction: f64, den: i128, tolerance: f64) -> Result<CountResult> {
    let whole = exact.div_euclid(den);
    let frac = (exact.rem_euclid(den) as f64 + correction) / den as f64;
    round_count(whole, Complex64::new(frac, 0.0), tolerance)
}

fn sign(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn bracket(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// `S_2(n; a)` for the first coefficient `a ∈ {0, 1}`, from the explicit
/// `θ` formula.
pub fn s2_trace(n: u32, a: u32, tolerance: f64) -> Result<CountResult> {
    if n == 0 || a > 1 {
        return Err(Error::OutOfRange(format!(
            "S_2(n;a) needs n ≥ 1 and a ∈ {{0,1}}, got n={n}, a={a}"
        )));
    }
    let th = theta();
    let (unit, trig) = if a == 1 { (1, -1.0) } else { (-1, 1.0) };
    let mut exact: i128 = 0;
    let mut corr = 0.0;
    for j in divisors(n as u64).into_iter().filter(|j| j % 2 == 1) {
        let mu = mobius(j);
        if mu == 0 {
            continue;
        }
        let m = n / j as u32;
        exact += mu as i128 * (checked_pow(2, m)? + unit);
        corr += mu as f64 * trig * sign(m as i64) * 2f64.powf(m as f64 / 2.0 + 1.0) * (m as f64 * th).cos();
    }
    closed_count(exact, corr, 4 * n as i128, tolerance)
}

/// `F_3(n; ξ₁^{t₁} ξ₂^{t₂})` on `E^{1,2}` over `F_3` with `ξ₁ = ⟨x+1⟩`,
/// `ξ₂ = ⟨x³+x+2⟩`.
pub fn f3_closed(n: u32, t1: i64, t2: i64) -> f64 {
    let (th1, th2) = (theta1(), theta2());
    let (nf, t1f, t2f) = (n as f64, t1 as f64, t2 as f64);
    let r = 3f64.powf(nf / 2.0);
    let half_turn = nf * PI / 2.0;
    (3f64.powi(n as i32) - 1.0) / 18.0
        - ((2.0 * PI * (t1f + 2.0 * t2f) / 3.0).cos() + (2.0 * PI * t1f / 3.0).cos()) / 9.0
        - r * ((2.0 * t1f + t2f) * PI / 3.0 + half_turn).cos() / 9.0
        - 2.0 * r * (2.0 * (t1f + t2f) * PI / 3.0).cos() * (nf * th1).cos() / 9.0
        - r * sign(t2) * (2.0 * t1f * PI / 3.0 + half_turn).cos() / 9.0
        - r * ((2.0 * nf - 2.0 * t1f + t2f) * PI / 3.0 + half_turn).cos() / 9.0
        - r * ((-2.0 * nf - 2.0 * t1f + t2f) * PI / 3.0 + half_turn).cos() / 9.0
        - 2.0 * r * sign(n as i64 / 2) * bracket(n.is_multiple_of(2)) * (t2f * PI / 3.0).cos() / 9.0
        - 2.0 * r * sign(n as i64) * (2.0 * t2f * PI / 3.0).cos() * (nf * th2).cos() / 9.0
}

/// `I_3(n; ξ₁^{e₁} ξ₂^{e₂})` on `E^{1,2}` over `F_3`, separating `k` by its
/// residue mod 6.
pub fn i3_closed(n: u32, e1: u32, e2: u32, tolerance: f64) -> Result<CountResult> {
    check_float_range(3, n)?;
    let (e1, e2) = ((e1 % 3) as i64, (e2 % 6) as i64);
    let mut total = 0.0;
    for k in divisors(n as u64) {
        let mu = mobius(k) as f64;
        if mu == 0.0 {
            continue;
        }
        let m = n / k as u32;
        total += mu
            * match k % 6 {
                0 => bracket(e1 == 0 && e2 == 0) * (3f64.powi(m as i32) - 1.0),
                1 => f3_closed(m, e1, e2),
                5 => f3_closed(m, -e1, -e2),
                2 if e2 % 2 == 0 => [0, 3].iter().map(|s| f3_closed(m, -e1, e2 / 2 + s)).sum(),
                // δ⁴ = ε means δ₁ = e₁ and 2δ₂ ≡ -e₂/2 (mod 3)
                4 if e2 % 2 == 0 => [0, 3].iter().map(|s| f3_closed(m, e1, -e2 / 2 + s)).sum(),
                3 if e1 == 0 && e2 % 3 == 0 => (0..3)
                    .flat_map(|s1| (0..3).map(move |s2| (s1, s2)))
                    .map(|(s1, s2)| f3_closed(m, s1, e2 / 3 + 2 * s2))
                    .sum(),
                _ => 0.0,
            };
    }
    round_count(0, Complex64::new(total / n as f64, 0.0), tolerance)
}

fn check_float_range(q: u32, n: u32) -> Result<()> {
    crate::charsum::guard_exact_range(q, n).map(|_| ())
}

/// `S_3(n; a)` for the first coefficient `a ∈ F_3`.
pub fn s3_trace(n: u32, a: u32, tolerance: f64) -> Result<CountResult> {
    if n == 0 || a > 2 {
        return Err(Error::OutOfRange(format!(
            "S_3(n;a) needs n ≥ 1 and a ∈ {{0,1,2}}, got n={n}, a={a}"
        )));
    }
    let zero = s3_zero(n, tolerance)?;
    if a == 0 {
        return Ok(zero);
    }
    let f3 = FieldSpec::prime(3)?;
    let rest = s_total(&f3, n)?.count as i128 - zero.count as i128;
    let half = exact_div(rest, 2)?;
    Ok(CountResult {
        count: half.count,
        residual: zero.residual,
    })
}

fn s3_zero(n: u32, tolerance: f64) -> Result<CountResult> {
    if n == 1 {
        return Ok(CountResult::exact(1));
    }
    let f3 = FieldSpec::prime(3)?;
    let mut residual: f64 = 0.0;
    let mut twice: i128 = 0;
    if n.is_multiple_of(2) {
        let half = s3_zero(n / 2, tolerance)?;
        residual = residual.max(half.residual);
        twice += half.count as i128;
    }
    twice += 2 * i_trace(&f3, n, FieldElement::ZERO)?.count as i128;
    for (e1, e2) in [(0, 0), (0, 3), (2, 4), (1, 5), (1, 2), (2, 1)] {
        let r = i3_closed(n, e1, e2, tolerance)?;
        residual = residual.max(r.residual);
        twice -= r.count as i128;
    }
    let half = exact_div(twice, 2)?;
    Ok(CountResult {
        count: half.count,
        residual,
    })
}

/// `I_2(n; ξ^t)` on `E^{2,0}` over `F_2` with `ξ = ⟨x+1⟩` of order 4.
pub fn i2_lead_closed(n: u32, t: u32, tolerance: f64) -> Result<CountResult> {
    check_float_range(2, n)?;
    let t = (t % 4) as f64;
    let mut total = 0.0;
    for k in divisors(n as u64) {
        let mu = mobius(k) as f64;
        if mu == 0.0 {
            continue;
        }
        let m = (n / k as u32) as f64;
        let osc = |shift: f64| {
            2f64.powf(m - 2.0) - sign(m as i64) * 2f64.powf(m / 2.0 - 1.0) * ((m + shift) * PI / 4.0).cos()
        };
        total += mu
            * match k % 4 {
                1 => osc(-2.0 * t),
                3 => osc(2.0 * t),
                2 => bracket((t as u32).is_multiple_of(2)) * 2f64.powf(m - 1.0),
                _ => 0.0,
            };
    }
    round_count(0, Complex64::new(total / n as f64, 0.0), tolerance)
}

fn cpoly(c: &[(f64, f64)]) -> CharPoly {
    CharPoly::new(c.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).expect("constant term 1")
}

/// `F_2(n; ξ₁^{s₁} ξ₂^{s₂})` on `E^{2,3}` over `F_2` with `ξ₁ = ⟨x+1⟩`,
/// `ξ₂ = ⟨x⁵+x+1⟩`, using `[z^n] ln P = -ρ_n(P)/n`.
pub fn f2_pair_closed(n: u32, s1: i64, s2: i64) -> f64 {
    let i = Complex64::i();
    let ip = |k: i64| i.powi(k.rem_euclid(4) as i32);
    let a = cpoly(&[(1.0, 0.0), (0.0, 1.0), (-1.0, -1.0)]);
    let b = cpoly(&[(1.0, 0.0), (0.0, 1.0), (-1.0, -1.0), (2.0, -2.0)]);
    let c = cpoly(&[(1.0, 0.0), (-1.0, 0.0), (0.0, 0.0), (0.0, -2.0), (0.0, 4.0)]);
    let d = cpoly(&[(1.0, 0.0), (1.0, 0.0), (2.0, 0.0), (2.0, 0.0), (4.0, 0.0)]);
    let e = cpoly(&[(1.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
    let rho = |p: &CharPoly| power_sum(p, n as usize);
    (2f64.powi(n as i32) - 1.0) / 16.0
        - (sign(s1 + s2) + sign(s1)) / 16.0
        - ((ip(-s1 - s2) + ip(-s1)) * rho(&a)).re / 8.0
        - ((ip(-s1 - 2 * s2) + ip(-s1 - 3 * s2)) * rho(&b)).re / 8.0
        - (sign(s1) * ip(-s2) * rho(&c)).re / 8.0
        - (PI * s2 as f64 / 2.0).cos() * rho(&d).re / 8.0
        - sign(s2) * rho(&e).re / 16.0
}

/// `I_2(n; ξ₁^{e₁} ξ₂^{e₂})` on `E^{2,3}` over `F_2`.
pub fn i2_pair_closed(n: u32, e1: u32, e2: u32, tolerance: f64) -> Result<CountResult> {
    check_float_range(2, n)?;
    let (e1, e2) = ((e1 % 4) as i64, (e2 % 4) as i64);
    let mut total = 0.0;
    for k in divisors(n as u64) {
        let mu = mobius(k) as f64;
        if mu == 0.0 {
            continue;
        }
        let m = n / k as u32;
        total += mu
            * match k % 4 {
                1 => f2_pair_closed(m, e1, e2),
                3 => f2_pair_closed(m, -e1, -e2),
                2 if e1 % 2 == 0 && e2 % 2 == 0 => [0, 2]
                    .iter()
                    .flat_map(|&s1| [0, 2].map(move |s2| (s1, s2)))
                    .map(|(s1, s2)| f2_pair_closed(m, e1 / 2 + s1, e2 / 2 + s2))
                    .sum(),
                _ => 0.0,
            };
    }
    round_count(0, Complex64::new(total / n as f64, 0.0), tolerance)
}

/// `S_2(n; a₁, a₂)` from the specialised `q = 2`, `ℓ = 2` formulas.
pub fn s2_two(n: u32, a1: u32, a2: u32, tolerance: f64) -> Result<CountResult> {
    if n == 0 || a1 > 1 || a2 > 1 {
        return Err(Error::OutOfRange(format!(
            "S_2(n;a1,a2) needs n ≥ 1 and bits, got n={n}, a=({a1},{a2})"
        )));
    }
    if n == 1 {
        // only x²+x+1
        return Ok(CountResult::exact(u64::from(a1 == 1 && a2 == 1)));
    }
    let even = n.is_multiple_of(2);
    // ξ^t on E^{2,0}: ξ⁰ = (0,0), ξ = (1,0), ξ² = (0,1), ξ³ = (1,1)
    let (lead_even, lead_odd, pairs): (u32, u32, [(u32, u32); 4]) = match (a1, a2) {
        (0, 0) => (0, 2, [(0, 0), (2, 0), (3, 2), (1, 2)]),
        (0, 1) => (2, 0, [(0, 2), (2, 2), (1, 0), (3, 0)]),
        (1, 0) => (1, 3, [(1, 3), (3, 3), (0, 1), (2, 1)]),
        _ => (3, 1, [(3, 1), (1, 1), (2, 3), (0, 3)]),
    };
    let mut residual: f64 = 0.0;
    let mut twice: i128 = 0;
    if a1 == 0 && even {
        let s = s2_trace(n / 2, a2, tolerance)?;
        residual = residual.max(s.residual);
        twice += s.count as i128;
    }
    let lead = i2_lead_closed(n, if even { lead_even } else { lead_odd }, tolerance)?;
    residual = residual.max(lead.residual);
    twice += 2 * lead.count as i128;
    for (e1, e2) in pairs {
        let r = i2_pair_closed(n, e1, e2, tolerance)?;
        residual = residual.max(r.residual);
        twice -= r.count as i128;
    }
    let half = exact_div(twice, 2)?;
    Ok(CountResult {
        count: half.count,
        residual,
    })
}

/// Interval bounds for `S_q(n; c)` and the counts it is built from.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub q: u32,
    pub n: u32,
    pub ell: usize,
    pub lower: f64,
    pub upper: f64,
    /// Largest `ℓ` for which positivity is guaranteed at this `(q, n)`.
    pub positivity_ell: i64,
    /// Bounds on `I_q(n; a)` with `ℓ` leading coefficients prescribed.
    pub cohen_lower: f64,
    pub cohen_upper: f64,
    /// Bounds on `I_q(n; a, b)` with `ℓ` leading and `ℓ+1` ending coefficients.
    pub cohen_pair_lower: f64,
    pub cohen_pair_upper: f64,
}

impl BoundsReport {
    pub fn contains(&self, count: u64) -> bool {
        self.lower < count as f64 && (count as f64) < self.upper
    }
}

/// `ℓ ≤ n/4 - log_q(qn/2)/2`, floored.
pub fn positivity_ell(q: u32, n: u32) -> i64 {
    let (q, n) = (q as f64, n as f64);
    (n / 4.0 - (q * n / 2.0).ln() / q.ln() / 2.0).floor() as i64
}

pub fn bounds(field: &FieldSpec, n: u32, ell: usize) -> Result<BoundsReport> {
    if ell == 0 || 2 * ell > n as usize {
        return Err(Error::OutOfRange(format!(
            "bounds need 1 ≤ ℓ ≤ n/2, got n={n}, ℓ={ell}"
        )));
    }
    let q = field.q();
    let (qf, nf, lf) = (q as f64, n as f64, ell as f64);
    let root = qf.powf(nf / 2.0);
    let centre = qf.powf(nf - lf) / (2.0 * nf);
    let spread = qf.powf(lf + 1.0) * root / nf;
    let lead_centre = qf.powf(nf - lf) / nf;
    let pair_centre = qf.powf(-2.0 * lf) * (qf.powf(nf) - 1.0) / (nf * (qf - 1.0));
    Ok(BoundsReport {
        q,
        n,
        ell,
        lower: centre - lf * spread,
        upper: centre + (lf + 1.0) * spread,
        positivity_ell: positivity_ell(q, n),
        cohen_lower: lead_centre - (lf + 1.0) / nf * root,
        cohen_upper: lead_centre + (lf - 1.0) / nf * root,
        cohen_pair_lower: pair_centre - (2.0 * lf + 2.0) / nf * root,
        cohen_pair_upper: pair_centre + 2.0 * lf / nf * root,
    })
}

/// The generators used for the `q = 3`, `E^{1,2}` tables.
pub fn reference_basis_q3(field: &FieldSpec) -> Result<Vec<Poly>> {
    Ok(vec![Poly::parse(field, "11")?, Poly::parse(field, "1012")?])
}

/// The generators used for the `q = 2`, `E^{2,3}` tables.
pub fn reference_basis_q2(field: &FieldSpec) -> Result<Vec<Poly>> {
    Ok(vec![Poly::parse(field, "11")?, Poly::parse(field, "100011")?])
}

/// `E^{1,2}` over `F_3` with `ξ₁ = ⟨x+1⟩`, `ξ₂ = ⟨x³+x+2⟩`.
pub fn reference_group_q3() -> Result<GroupStructure> {
    let f3 = FieldSpec::prime(3)?;
    decompose(&f3, 1, 2, Some(&reference_basis_q3(&f3)?))
}

/// `E^{2,3}` over `F_2` with `ξ₁ = ⟨x+1⟩`, `ξ₂ = ⟨x⁵+x+1⟩`.
pub fn reference_group_q2() -> Result<GroupStructure> {
    let f2 = FieldSpec::prime(2)?;
    decompose(&f2, 2, 3, Some(&reference_basis_q2(&f2)?))
}
