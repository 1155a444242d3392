//! Brute-force counters. Everything here enumerates polynomials directly and
//! serves as ground truth for the formula paths.

use crate::classgroup::{ClassLabel, GroupStructure};
use crate::error::{Error, Result};
use crate::ffpoly::{enumerate_monic, FieldElement, FieldSpec, Poly};
use crate::rabin;

pub const DEFAULT_WITNESS_CAP: usize = 16;

/// Largest number of candidates any single scan may visit.
pub const SEARCH_LIMIT: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub count: u64,
    /// The first matches in enumeration order, at most the witness cap.
    pub witnesses: Vec<Poly>,
    pub enumerated: u64,
}

impl OracleReport {
    fn empty() -> Self {
        OracleReport {
            count: 0,
            witnesses: Vec::new(),
            enumerated: 0,
        }
    }

    fn record(&mut self, f: Poly, cap: usize) {
        self.count += 1;
        if self.witnesses.len() < cap {
            self.witnesses.push(f);
        }
    }
}

fn guard(q: u32, free: usize) -> Result<u64> {
    let size = (q as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    if size > SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge(size));
    }
    Ok(size as u64)
}

fn check_elements(field: &FieldSpec, v: &[FieldElement]) -> Result<()> {
    for c in v {
        field.elem(c.index() as u64)?;
    }
    Ok(())
}

/// Monic `f` given by descending coefficients.
fn irreducible(field: &FieldSpec, descending: &[FieldElement]) -> Result<bool> {
    if field.is_prime_field() {
        let flat: Vec<u32> = descending.iter().rev().map(|c| c.index()).collect();
        return Ok(rabin::irreducible_prime(field.p(), &flat));
    }
    let ascending = descending.iter().rev().copied().collect();
    Poly::new(field, ascending).is_irreducible()
}

fn irreducible_poly(f: &Poly) -> Result<bool> {
    if f.field().is_prime_field() {
        let d = f.degree().ok_or(Error::ZeroPolynomial)?;
        let flat: Vec<u32> = (0..=d).map(|i| f.coeff(i).index()).collect();
        return Ok(rabin::irreducible_prime(f.field().p(), &flat));
    }
    f.is_irreducible()
}

/// Self-reciprocal irreducible monic polynomials of even degree `degree`
/// whose leading coefficients are `leading`.
pub fn brute_s(field: &FieldSpec, degree: usize, leading: &[FieldElement]) -> Result<OracleReport> {
    brute_s_capped(field, degree, leading, DEFAULT_WITNESS_CAP)
}

pub fn brute_s_capped(field: &FieldSpec, degree: usize, leading: &[FieldElement], cap: usize) -> Result<OracleReport> {
    if degree < 2 || !degree.is_multiple_of(2) {
        return Err(Error::OutOfRange(format!(
            "self-reciprocal degree must be even and at least 2, got {degree}"
        )));
    }
    check_elements(field, leading)?;
    let n = degree / 2;
    // a palindrome is fixed by f_1..f_n; those reachable from the window are pinned
    let pinned = leading.len().min(n);
    guard(field.q(), n - pinned)?;
    let mut half = vec![FieldElement::ZERO; n + 1];
    half[0] = FieldElement::ONE;
    half[1..=pinned].copy_from_slice(&leading[..pinned]);
    let mut report = OracleReport::empty();
    let q = field.q();
    loop {
        report.enumerated += 1;
        let mut coeffs = half.clone();
        coeffs.extend(half[..n].iter().rev());
        if coeffs[1..]
            .iter()
            .take(leading.len())
            .chain(std::iter::repeat(&FieldElement::ZERO))
            .zip(leading)
            .all(|(a, b)| a == b)
            && irreducible(field, &coeffs)?
        {
            report.record(Poly::new(field, coeffs), cap);
        }
        // odometer over the free positions, lowest position fastest
        let mut pos = pinned + 1;
        loop {
            if pos > n {
                return Ok(report);
            }
            let v = half[pos].index() + 1;
            if v < q {
                half[pos] = field.elem(v as u64)?;
                break;
            }
            half[pos] = FieldElement::ZERO;
            pos += 1;
        }
    }
}

/// Irreducible monic polynomials of degree `d` with leading window `leading`
/// and ending window `ending`.
pub fn brute_i(field: &FieldSpec, d: usize, leading: &[FieldElement], ending: &[FieldElement]) -> Result<OracleReport> {
    if d == 0 {
        return Err(Error::OutOfRange("degree must be at least 1".into()));
    }
    check_elements(field, leading)?;
    check_elements(field, ending)?;
    let (ell, t) = (leading.len(), ending.len());
    let mut report = OracleReport::empty();
    if ell + t <= d {
        guard(field.q(), d - ell - t)?;
        for f in enumerate_monic(field, d, Some(leading), Some(ending))? {
            report.enumerated += 1;
            if irreducible_poly(&f)? {
                report.record(f, DEFAULT_WITNESS_CAP);
            }
        }
    } else {
        // the windows overlap, so scan everything and filter
        guard(field.q(), d)?;
        for f in enumerate_monic(field, d, None, None)? {
            report.enumerated += 1;
            if f.leading_coeffs(ell)? == leading && f.ending_coeffs(t)? == ending && irreducible_poly(&f)? {
                report.record(f, DEFAULT_WITNESS_CAP);
            }
        }
    }
    Ok(report)
}

/// Irreducible monic polynomials of degree `d` in the class `eps`.
pub fn brute_class_count(group: &GroupStructure, d: usize, eps: &ClassLabel) -> Result<OracleReport> {
    if !group.group().contains(eps) {
        return Err(Error::NotInGroup(eps.to_string()));
    }
    brute_i(group.field(), d, &eps.leading, &eps.ending)
}

/// Irreducibility flags for every monic polynomial of degree `d`, indexed by
/// `Σ_{i<d} c_i q^i`. Reducible polynomials are marked by multiplying out
/// every product of a lower-degree irreducible factor and a cofactor, so no
/// irreducibility test is involved.
pub fn irreducible_sieve(field: &FieldSpec, d: usize) -> Result<Vec<bool>> {
    if d == 0 {
        return Err(Error::OutOfRange("degree must be at least 1".into()));
    }
    let size = guard(field.q(), d)? as usize;
    let q = field.q() as usize;
    let mut flags = vec![true; size];
    for i in 1..=d / 2 {
        let small = irreducible_sieve(field, i)?;
        let cofactors = q.pow((d - i) as u32);
        for (gi, _) in small.iter().enumerate().filter(|(_, &irr)| irr) {
            let g = decode(field, gi, i);
            for hi in 0..cofactors {
                let h = decode(field, hi, d - i);
                flags[encode(&mul_monic(field, &g, &h), q)] = false;
            }
        }
    }
    Ok(flags)
}

/// Coefficients `c_0..c_{d-1}` of the monic polynomial with the given index.
fn decode(field: &FieldSpec, mut idx: usize, d: usize) -> Vec<u32> {
    let q = field.q() as usize;
    (0..d)
        .map(|_| {
            let c = idx % q;
            idx /= q;
            c as u32
        })
        .collect()
}

fn encode(low: &[u32], q: usize) -> usize {
    low.iter().rev().fold(0, |acc, &c| acc * q + c as usize)
}

/// Product of two monic polynomials given by their non-leading coefficients.
fn mul_monic(field: &FieldSpec, g: &[u32], h: &[u32]) -> Vec<u32> {
    let (a, b) = (g.len(), h.len());
    let at = |v: &[u32], i: usize| if i == v.len() { 1 } else { v[i] };
    let mut out = vec![FieldElement::ZERO; a + b];
    for i in 0..=a {
        let x = FieldElement::from_index(at(g, i));
        if x.is_zero() {
            continue;
        }
        for j in 0..=b {
            if i + j >= a + b {
                break;
            }
            let prod = field.mul(x, FieldElement::from_index(at(h, j)));
            out[i + j] = field.add(out[i + j], prod);
        }
    }
    out.into_iter().map(FieldElement::index).collect()
}

/// Per-class counts of irreducible monic polynomials of degree `d`, one
/// vector per group indexed by exponent code. Polynomials with no class
/// (constant term 0 when `t > 0`) are skipped.
pub fn class_histograms(field: &FieldSpec, d: usize, groups: &[&GroupStructure]) -> Result<Vec<Vec<u64>>> {
    for g in groups {
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
    }
    let flags = irreducible_sieve(field, d)?;
    let mut out: Vec<Vec<u64>> = groups.iter().map(|g| vec![0; g.order() as usize]).collect();
    for (idx, _) in flags.iter().enumerate().filter(|(_, &irr)| irr) {
        let mut coeffs: Vec<FieldElement> = decode(field, idx, d)
            .into_iter()
            .map(FieldElement::from_index)
            .collect();
        coeffs.push(FieldElement::ONE);
        let f = Poly::new(field, coeffs);
        for (g, hist) in groups.iter().zip(out.iter_mut()) {
            match g.group().class_of(&f) {
                Ok(label) => hist[g.code_of(&label)? as usize] += 1,
                Err(Error::ZeroConstantTerm) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Number of irreducible monic polynomials of degree `d`, from the sieve.
pub fn sieve_total(field: &FieldSpec, d: usize) -> Result<u64> {
    Ok(irreducible_sieve(field, d)?.iter().filter(|&&b| b).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgroup::decompose;

    fn f(q: u32) -> FieldSpec {
        FieldSpec::prime(q).unwrap()
    }

    fn els(field: &FieldSpec, v: &[u64]) -> Vec<FieldElement> {
        v.iter().map(|&c| field.elem(c).unwrap()).collect()
    }

    #[test]
    fn brute_s_examples() {
        let f2 = f(2);
        let r = brute_s(&f2, 6, &els(&f2, &[0, 0])).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.witnesses[0].to_string(), "x^6+x^3+1");
        assert_eq!(brute_s(&f2, 2, &[]).unwrap().count, 1);
        let f3 = f(3);
        assert_eq!(brute_s(&f3, 10, &els(&f3, &[0])).unwrap().count, 10);
        assert!(brute_s(&f2, 5, &[]).is_err());
    }

    #[test]
    fn brute_i_examples() {
        let f2 = f(2);
        let r = brute_i(&f2, 4, &els(&f2, &[0]), &[]).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.witnesses[0].to_string(), "x^4+x+1");
        let f3 = f(3);
        let r = brute_i(&f3, 2, &[], &els(&f3, &[1])).unwrap();
        assert_eq!((r.count, r.enumerated), (1, 3));
        let r = brute_i(&f2, 1, &[], &els(&f2, &[0])).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.witnesses[0].to_string(), "x");
    }

    #[test]
    fn brute_class_count_examples() {
        let f3 = f(3);
        let gens = [Poly::parse(&f3, "11").unwrap(), Poly::parse(&f3, "1012").unwrap()];
        let g = decompose(&f3, 1, 2, Some(&gens)).unwrap();
        assert_eq!(brute_class_count(&g, 8, &g.group().identity()).unwrap().count, 42);

        let f2 = f(2);
        let gens = [Poly::parse(&f2, "11").unwrap(), Poly::parse(&f2, "100011").unwrap()];
        let g = decompose(&f2, 2, 3, Some(&gens)).unwrap();
        // x^5+x+1 = (x^2+x+1)(x^3+x^2+1) is reducible
        assert_eq!(brute_class_count(&g, 5, &g.from_exponents(&[0, 1])).unwrap().count, 0);
        assert_eq!(brute_class_count(&g, 5, &g.from_exponents(&[0, 2])).unwrap().count, 1);
    }

    #[test]
    fn sieve_matches_rabin() {
        for q in [2u32, 3, 4, 5] {
            let field = FieldSpec::with_order(q as u64).unwrap();
            for d in 1..=5 {
                let flags = irreducible_sieve(&field, d).unwrap();
                for (idx, &flag) in flags.iter().enumerate() {
                    let mut coeffs: Vec<FieldElement> = decode(&field, idx, d)
                        .into_iter()
                        .map(FieldElement::from_index)
                        .collect();
                    coeffs.push(FieldElement::ONE);
                    assert_eq!(flag, Poly::new(&field, coeffs).is_irreducible().unwrap());
                }
            }
        }
    }

    #[test]
    fn histograms_partition_irreducibles() {
        let f3 = f(3);
        let g = decompose(&f3, 1, 2, None).unwrap();
        let g0 = decompose(&f3, 2, 0, None).unwrap();
        for d in 1..=6 {
            let hist = class_histograms(&f3, d, &[&g, &g0]).unwrap();
            let total = sieve_total(&f3, d).unwrap();
            assert_eq!(hist[0].iter().sum::<u64>(), total - u64::from(d == 1));
            assert_eq!(hist[1].iter().sum::<u64>(), total);
        }
    }

    #[test]
    fn search_limit() {
        let f2 = f(2);
        assert!(matches!(brute_i(&f2, 40, &[], &[]), Err(Error::SearchSpaceTooLarge(_))));
        assert!(matches!(brute_s(&f2, 80, &[]), Err(Error::SearchSpaceTooLarge(_))));
    }
}
