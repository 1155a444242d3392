//! Self-checks behind `palcount verify`. Each suite recomputes values by two
//! independent routes and reports every disagreement.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::charsum::{i_total, i_trace, CharSumEngine};
use crate::classgroup::{decompose, GroupStructure};
use crate::error::{Error, Result};
use crate::ffpoly::{FieldElement, FieldSpec, Poly};
use crate::oracle::{brute_class_count, brute_s, class_histograms};
use crate::sripm::{
    bounds, i2_lead_closed, i2_pair_closed, i3_closed, phi_inverse, phi_map, psi_inverse, psi_map, reference_group_q2,
    reference_group_q3, s2_trace, s2_two, s3_trace, s_total, s_total_recursive, vectors, SrimCounter,
};
use crate::tables::{compute_table, known_erratum, reference_table, TableSpec};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Tables,
    Oracle,
    ClosedForms,
    Invariants,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tables" => Ok(Suite::Tables),
            "oracle" => Ok(Suite::Oracle),
            "closed-forms" => Ok(Suite::ClosedForms),
            "invariants" => Ok(Suite::Invariants),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Tables => "tables",
            Suite::Oracle => "oracle",
            Suite::ClosedForms => "closed-forms",
            Suite::Invariants => "invariants",
        };
        f.write_str(s)
    }
}

/// Optional limits; each suite picks its own defaults.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Scope {
    pub q: Option<u32>,
    pub max_n: Option<u32>,
    pub max_2n: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub q: u32,
    pub n: u32,
    pub ell: usize,
    pub t: usize,
    pub label: String,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={} n={} ell={} t={} {}: expected {}, got {}",
            self.q, self.n, self.ell, self.t, self.label, self.expected, self.got
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub checks: u64,
    pub mismatches: Vec<Mismatch>,
    pub notes: Vec<String>,
    pub max_residual: f64,
}

impl Report {
    fn new(suite: Suite) -> Self {
        Report {
            suite,
            checks: 0,
            mismatches: Vec::new(),
            notes: Vec::new(),
            max_residual: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn residual(&mut self, r: f64) {
        self.max_residual = self.max_residual.max(r);
    }

    #[allow(clippy::too_many_arguments)]
    fn check<T: PartialEq + fmt::Display>(
        &mut self,
        q: u32,
        n: u32,
        ell: usize,
        t: usize,
        label: impl Into<String>,
        expected: T,
        got: T,
    ) {
        self.checks += 1;
        if expected != got {
            self.mismatches.push(Mismatch {
                q,
                n,
                ell,
                t,
                label: label.into(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }
}

pub fn run(suite: Suite, scope: Scope, tolerance: f64) -> Result<Report> {
    match suite {
        Suite::Tables => tables(scope, tolerance),
        Suite::Oracle => oracle(scope, tolerance),
        Suite::ClosedForms => closed_forms(scope, tolerance),
        Suite::Invariants => invariants(scope, tolerance),
    }
}

fn elems(field: &FieldSpec, v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    let _ = field;
    format!("({})", parts.join(","))
}

/// Published tables against recomputed ones; cells listed as known errata
/// must instead agree with a direct scan.
pub fn tables(scope: Scope, tolerance: f64) -> Result<Report> {
    let max_n = scope.max_n.unwrap_or(20).min(20);
    let mut report = Report::new(Suite::Tables);
    let q3 = reference_group_q3()?;
    for id in 1..=7u8 {
        let got = compute_table(&TableSpec::new(id, max_n)?, tolerance)?;
        report.residual(got.max_residual);
        let want = reference_table(id)?;
        let (q, ell, t) = match id {
            1..=3 => (3, 1, 2),
            4 => (3, 1, 0),
            5 | 6 => (2, 2, 3),
            _ => (2, 2, 0),
        };
        for (g, w) in got.rows.iter().zip(&want.rows) {
            for (c, (&a, &b)) in g.values.iter().zip(&w.values).enumerate() {
                let label = format!("table {id} {}", want.columns[c]);
                match known_erratum(id, g.n, c) {
                    None => report.check(q, g.n, ell, t, label, b, a),
                    Some(e) => {
                        let scanned = erratum_scan(id, g.n, c, &q3)?;
                        report.check(q, g.n, ell, t, format!("{label} (direct scan)"), scanned, a);
                        report.notes.push(format!(
                            "table {id} n={} {}: known-erratum, oracle-confirmed (printed {}, computed {a}, scan {scanned})",
                            g.n, want.columns[c], e.printed
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

fn erratum_scan(id: u8, n: u32, column: usize, q3: &GroupStructure) -> Result<u64> {
    match id {
        1..=3 => {
            let eps = q3.from_exponents(&[id as u32 - 1, column as u32]);
            Ok(brute_class_count(q3, n as usize, &eps)?.count)
        }
        4 => {
            let f3 = FieldSpec::prime(3)?;
            Ok(brute_s(&f3, 2 * n as usize, &[f3.from_int(column as i64)])?.count)
        }
        _ => Err(Error::OutOfRange(format!("no scan for table {id}"))),
    }
}

/// Formula counts against brute force: `S_count` vs palindrome scans and
/// `I_count` vs per-class sieve histograms.
pub fn oracle(scope: Scope, tolerance: f64) -> Result<Report> {
    let q = scope.q.unwrap_or(2);
    let field = FieldSpec::with_order(q as u64)?;
    let max_2n = scope.max_2n.unwrap_or(match q {
        2 => 16,
        3 => 12,
        _ => 8,
    });
    let max_n = scope.max_n.unwrap_or(match q {
        2 => 10,
        3 => 8,
        _ => 6,
    });
    let mut report = Report::new(Suite::Oracle);
    let counter = SrimCounter::new(&field, tolerance);
    for n in 1..=max_2n / 2 {
        for ell in 0..=2 {
            for c in vectors(&field, ell) {
                let got = counter.s_count(n, &c)?;
                report.residual(got.residual);
                let want = brute_s(&field, 2 * n as usize, &c)?.count;
                report.check(q, n, ell, 0, format!("S{}", elems(&field, &c)), want, got.count);
            }
        }
    }
    let engines = class_engines(&field, 4, tolerance)?;
    let groups: Vec<&GroupStructure> = engines.iter().map(|e| e.group()).collect();
    for n in 1..=max_n {
        let hists = class_histograms(&field, n as usize, &groups)?;
        for (engine, hist) in engines.iter().zip(&hists) {
            let g = engine.group();
            for (code, &want) in hist.iter().enumerate() {
                let got = engine.i_count_code(n, code as u32)?;
                report.residual(got.residual);
                report.check(
                    q,
                    n,
                    g.ell(),
                    g.t(),
                    format!("I{}", g.label_of_code(code as u32)),
                    want,
                    got.count,
                );
            }
        }
    }
    Ok(report)
}

/// Engines for every `E^{ℓ,t}` with `1 ≤ ℓ + t ≤ max_window`.
pub fn class_engines(field: &FieldSpec, max_window: usize, tolerance: f64) -> Result<Vec<CharSumEngine>> {
    let mut out = Vec::new();
    for w in 1..=max_window {
        for ell in 0..=w {
            let g = decompose(field, ell, w - ell, None)?;
            out.push(CharSumEngine::new(Arc::new(g), tolerance));
        }
    }
    Ok(out)
}

/// The specialised `q = 2` and `q = 3` formulas against the general engine.
pub fn closed_forms(scope: Scope, tolerance: f64) -> Result<Report> {
    let q = scope.q.unwrap_or(2);
    let max_n = scope.max_n.unwrap_or(20);
    let field = FieldSpec::with_order(q as u64)?;
    let counter = SrimCounter::new(&field, tolerance);
    let mut report = Report::new(Suite::ClosedForms);
    let lead1 = decompose(&field, 1, 0, None)?;
    let lead1 = CharSumEngine::new(Arc::new(lead1), tolerance);
    for n in 1..=max_n {
        // total count against the sum over the first coefficient
        let mut sum = 0;
        for c in field.elements() {
            let r = counter.s_count(n, &[c])?;
            report.residual(r.residual);
            sum += r.count;
        }
        report.check(q, n, 1, 0, "S_total vs sum of S(n;c)", s_total(&field, n)?.count, sum);
        for c in field.elements() {
            let label = lead1.group().group().identity();
            let label = crate::classgroup::ClassLabel::new(vec![c], label.ending);
            let got = lead1.i_count(n, &label)?;
            report.residual(got.residual);
            report.check(
                q,
                n,
                1,
                0,
                format!("I_trace({c})"),
                i_trace(&field, n, c)?.count,
                got.count,
            );
        }
    }
    match q {
        2 => closed_forms_q2(&counter, max_n, tolerance, &mut report)?,
        3 => closed_forms_q3(&counter, max_n, tolerance, &mut report)?,
        _ => report.notes.push(format!("no specialised formulas for q={q}")),
    }
    Ok(report)
}

fn closed_forms_q2(counter: &SrimCounter, max_n: u32, tolerance: f64, report: &mut Report) -> Result<()> {
    let f2 = counter.field().clone();
    let xi = [Poly::parse(&f2, "11")?];
    let lead2 = Arc::new(decompose(&f2, 2, 0, Some(&xi))?);
    let lead2 = CharSumEngine::new(lead2, tolerance);
    let pair = Arc::new(reference_group_q2()?);
    let pair = CharSumEngine::new(pair, tolerance);
    for n in 1..=max_n {
        for a in 0..2u32 {
            let closed = s2_trace(n, a, tolerance)?;
            let general = counter.s_count(n, &[f2.from_int(a as i64)])?;
            report.residual(closed.residual.max(general.residual));
            report.check(2, n, 1, 0, format!("S_2(n;{a})"), general.count, closed.count);
        }
        for (a1, a2) in [(0u32, 0u32), (0, 1), (1, 0), (1, 1)] {
            let closed = s2_two(n, a1, a2, tolerance)?;
            let general = counter.s_count(n, &[f2.from_int(a1 as i64), f2.from_int(a2 as i64)])?;
            report.residual(closed.residual.max(general.residual));
            report.check(2, n, 2, 0, format!("S_2(n;{a1},{a2})"), general.count, closed.count);
        }
        for t in 0..4u32 {
            let closed = i2_lead_closed(n, t, tolerance)?;
            let general = lead2.i_count_code(n, lead2.group().code_of_exponents(&[t]))?;
            report.residual(closed.residual.max(general.residual));
            report.check(2, n, 2, 0, format!("I_2(n;xi^{t})"), general.count, closed.count);
        }
        for e1 in 0..4u32 {
            for e2 in 0..4u32 {
                let closed = i2_pair_closed(n, e1, e2, tolerance)?;
                let general = pair.i_count_code(n, pair.group().code_of_exponents(&[e1, e2]))?;
                report.residual(closed.residual.max(general.residual));
                report.check(
                    2,
                    n,
                    2,
                    3,
                    format!("I_2(n;xi1^{e1}*xi2^{e2})"),
                    general.count,
                    closed.count,
                );
            }
        }
    }
    Ok(())
}

fn closed_forms_q3(counter: &SrimCounter, max_n: u32, tolerance: f64, report: &mut Report) -> Result<()> {
    let f3 = counter.field().clone();
    let pair = Arc::new(reference_group_q3()?);
    let pair = CharSumEngine::new(pair, tolerance);
    for n in 1..=max_n {
        for a in 0..3u32 {
            let closed = s3_trace(n, a, tolerance)?;
            let general = counter.s_count(n, &[f3.from_int(a as i64)])?;
            report.residual(closed.residual.max(general.residual));
            report.check(3, n, 1, 0, format!("S_3(n;{a})"), general.count, closed.count);
        }
        for e1 in 0..3u32 {
            for e2 in 0..6u32 {
                let closed = i3_closed(n, e1, e2, tolerance)?;
                let general = pair.i_count_code(n, pair.group().code_of_exponents(&[e1, e2]))?;
                report.residual(closed.residual.max(general.residual));
                report.check(
                    3,
                    n,
                    1,
                    2,
                    format!("I_3(n;xi1^{e1}*xi2^{e2})"),
                    general.count,
                    closed.count,
                );
            }
        }
    }
    Ok(())
}

/// Identities that must hold for every parameter choice.
pub fn invariants(scope: Scope, tolerance: f64) -> Result<Report> {
    let q = scope.q.unwrap_or(2);
    let max_n = scope.max_n.unwrap_or(12);
    let field = FieldSpec::with_order(q as u64)?;
    let mut report = Report::new(Suite::Invariants);

    for engine in class_engines(&field, 4, tolerance)? {
        let g = engine.group();
        let (ell, t) = (g.ell(), g.t());
        for n in 1..=max_n {
            let counts = engine.i_counts_all(n)?;
            let mut sum = 0;
            for r in &counts {
                report.residual(r.residual);
                sum += r.count;
            }
            let want = i_total(&field, n)?.count - u64::from(t > 0 && n == 1);
            report.check(q, n, ell, t, "sum of I(n;eps)", want, sum);
            let f_sum: f64 = (0..g.order() as u32)
                .map(|c| engine.f_value_code(n, c))
                .sum::<Result<f64>>()?;
            let target = (q as f64).powi(n as i32) - if t > 0 { 1.0 } else { 0.0 };
            report.check(
                q,
                n,
                ell,
                t,
                "sum of F(n;eps) within 1e-6",
                true,
                (f_sum - target).abs() < 1e-6,
            );
        }
    }

    for ell in 0..=4usize {
        for d in [2 * ell as u32 + 1, 2 * ell as u32 + 4, 9] {
            for g in vectors(&field, ell) {
                report.check(
                    q,
                    d,
                    ell,
                    0,
                    "phi round trip",
                    elems(&field, &g),
                    elems(&field, &phi_inverse(&field, d, &phi_map(&field, d, &g))),
                );
            }
        }
        if ell <= 2 {
            for b in vectors(&field, ell + 1).filter(|b| !b[0].is_zero()) {
                for a in vectors(&field, ell) {
                    let back = psi_inverse(&field, &b, &psi_map(&field, &b, &a)?)?;
                    report.check(
                        q,
                        0,
                        ell,
                        ell + 1,
                        format!("psi round trip b={}", elems(&field, &b)),
                        elems(&field, &a),
                        elems(&field, &back),
                    );
                }
            }
        }
    }

    for n in 1..=max_n.max(2) {
        report.check(
            q,
            n,
            0,
            0,
            "S_total recursion",
            s_total(&field, n)?.count,
            s_total_recursive(&field, n)?.count,
        );
    }

    let counter = SrimCounter::new(&field, tolerance);
    for n in 2..=max_n {
        for ell in 1..=(n as usize / 2).min(if q == 2 { 4 } else { 2 }) {
            let b = bounds(&field, n, ell)?;
            for c in vectors(&field, ell) {
                let terms = counter.recursion_terms(n, &c)?;
                let s = terms.count()?;
                report.residual(terms.residual);
                let label = format!("S{}", elems(&field, &c));
                report.check(
                    q,
                    n,
                    ell,
                    0,
                    format!("{label} inside bounds ({:.1}, {:.1})", b.lower, b.upper),
                    true,
                    b.contains(s),
                );
                let upper_ok = s <= terms.i_phi;
                let lower_ok = 2 * s as i128 >= 2 * terms.i_phi as i128 - terms.psi_sum as i128;
                report.check(q, n, ell, 0, format!("{label} sandwich"), true, upper_ok && lower_ok);
            }
        }
    }

    if q == 2 || q == 3 {
        basis_invariance(q, max_n, tolerance, &mut report)?;
    }
    Ok(report)
}

/// Per-class counts do not depend on which generators index the group.
pub fn basis_invariance(q: u32, max_n: u32, tolerance: f64, report: &mut Report) -> Result<()> {
    let reference = if q == 2 {
        reference_group_q2()?
    } else {
        reference_group_q3()?
    };
    let field = reference.field().clone();
    let default = decompose(&field, reference.ell(), reference.t(), None)?;
    let (ell, t) = (reference.ell(), reference.t());
    let a = CharSumEngine::new(Arc::new(reference), tolerance);
    let b = CharSumEngine::new(Arc::new(default), tolerance);
    for n in 1..=max_n {
        for code in 0..a.group().order() as u32 {
            let label = a.group().label_of_code(code);
            let x = a.i_count_code(n, code)?;
            let y = b.i_count(n, &label)?;
            report.residual(x.residual.max(y.residual));
            report.check(q, n, ell, t, format!("basis invariance {label}"), x.count, y.count);
        }
    }
    Ok(())
}
