//! One PASS/FAIL line per acceptance criterion. The process exits nonzero
//! only when a result is wrong in a way that is not an oracle-confirmed
//! misprint in the published tables.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use palcount_core::charsum::{i_total, CharSumEngine};
use palcount_core::classgroup::decompose;
use palcount_core::ffpoly::{FieldElement, FieldSpec, Poly};
use palcount_core::oracle::{brute_class_count, brute_s, brute_s_capped, class_histograms};
use palcount_core::sripm::{bounds, positivity_ell, reference_group_q2, reference_group_q3, vectors, SrimCounter};
use palcount_core::tables::{compute_table, reference_table, Table, TableSpec};
use palcount_core::verify::{self, Report, Scope};

const TOL: f64 = 1e-6;

struct Harness {
    max_residual: f64,
    hard_failures: Vec<String>,
}

impl Harness {
    fn residual(&mut self, r: f64) {
        self.max_residual = self.max_residual.max(r);
    }

    fn line(&mut self, id: u8, pass: bool, detail: String) {
        println!("{} criterion {id}: {detail}", if pass { "PASS" } else { "FAIL" });
    }

    fn hard(&mut self, id: u8, msg: String) {
        self.hard_failures.push(format!("criterion {id}: {msg}"));
    }

    fn report(&mut self, id: u8, r: &Report) -> bool {
        self.residual(r.max_residual);
        for m in &r.mismatches {
            self.hard(id, m.to_string());
        }
        r.passed()
    }
}

fn field(q: u32) -> FieldSpec {
    FieldSpec::with_order(q as u64).unwrap()
}

/// Cells of `got` that differ from the published table.
fn diff(got: &Table, want: &Table) -> Vec<(u32, usize, u64, u64)> {
    let mut out = Vec::new();
    for (g, w) in got.rows.iter().zip(&want.rows) {
        for (c, (&a, &b)) in g.values.iter().zip(&w.values).enumerate() {
            if a != b {
                out.push((g.n, c, b, a));
            }
        }
    }
    out
}

fn compute(h: &mut Harness, id: u8) -> Table {
    let t = compute_table(&TableSpec::new(id, 20).unwrap(), TOL).unwrap();
    h.residual(t.max_residual);
    t
}

fn criterion_1(h: &mut Harness) {
    let start = Instant::now();
    let group = reference_group_q3().unwrap();
    let mut cells = 0;
    let mut misprints = Vec::new();
    for id in 1..=3u8 {
        let got = compute(h, id);
        let want = reference_table(id).unwrap();
        cells += got.rows.iter().map(|r| r.values.len()).sum::<usize>();
        for (n, c, printed, computed) in diff(&got, &want) {
            let eps = group.from_exponents(&[id as u32 - 1, c as u32]);
            let scan = brute_class_count(&group, n as usize, &eps).unwrap().count;
            if scan != computed {
                h.hard(
                    1,
                    format!("table {id} n={n} {}: computed {computed}, scan {scan}", want.columns[c]),
                );
            }
            misprints.push(format!(
                "table {id} n={n} {} printed {printed}, computed {computed}, scan {scan}",
                want.columns[c]
            ));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let detail = format!(
        "{}/{cells} published cells reproduced in {elapsed:.1}s; printed cells contradicted by a direct scan: {}",
        cells - misprints.len(),
        if misprints.is_empty() {
            "none".to_string()
        } else {
            misprints.join("; ")
        }
    );
    h.line(1, misprints.is_empty(), detail);
}

fn criterion_2(h: &mut Harness) {
    let got = compute(h, 4);
    let want = reference_table(4).unwrap();
    let f3 = field(3);
    let scan = brute_s(&f3, 12, &[FieldElement::ONE]).unwrap().count;
    let mut ok = true;
    for (n, c, printed, computed) in diff(&got, &want) {
        if (n, c) != (6, 1) {
            ok = false;
            h.hard(2, format!("n={n} column {c}: printed {printed}, computed {computed}"));
        }
    }
    let cell = got.rows[5].values[1];
    if cell != scan {
        ok = false;
        h.hard(2, format!("S_3(6;1): engine {cell}, scan {scan}"));
    }
    h.line(
        2,
        ok,
        format!("39 cells exact; S_3(6;1) engine {cell} = scan {scan} (published 208)"),
    );
}

fn exact_tables(h: &mut Harness, id: u8, ids: &[u8]) -> (bool, usize) {
    let mut ok = true;
    let mut cells = 0;
    for &t in ids {
        let got = compute(h, t);
        let want = reference_table(t).unwrap();
        cells += got.rows.iter().map(|r| r.values.len()).sum::<usize>();
        for (n, c, printed, computed) in diff(&got, &want) {
            ok = false;
            h.hard(
                id,
                format!(
                    "table {t} n={n} {}: printed {printed}, computed {computed}",
                    want.columns[c]
                ),
            );
        }
    }
    (ok, cells)
}

fn criterion_3(h: &mut Harness) {
    let (ok, cells) = exact_tables(h, 3, &[5, 6]);
    h.line(3, ok, format!("{cells} cells of the F_2 class tables exact"));
}

fn criterion_4(h: &mut Harness) {
    let (mut ok, cells) = exact_tables(h, 4, &[7]);
    let counter = SrimCounter::new(&field(2), TOL);
    let one = FieldElement::ONE;
    let zero = FieldElement::ZERO;
    let a = counter.s_count(8, &[zero, zero]).unwrap().count;
    let b = counter.s_count(20, &[one, one]).unwrap().count;
    if (a, b) != (3, 6544) {
        ok = false;
        h.hard(4, format!("anchors S_2(8;0,0)={a}, S_2(20;1,1)={b}"));
    }
    h.line(4, ok, format!("{cells} cells exact; S_2(8;0,0)={a}, S_2(20;1,1)={b}"));
}

fn criterion_5(h: &mut Harness) {
    let start = Instant::now();
    let mut checks = 0u64;
    let mut ok = true;
    for q in [2u32, 3, 5] {
        let f = field(q);
        let engines = verify::class_engines(&f, 4, TOL).unwrap();
        let groups: Vec<_> = engines.iter().map(|e| e.group()).collect();
        for n in 1..=10u32 {
            if (q as u64).pow(n) > 100_000_000 {
                continue;
            }
            let hists = class_histograms(&f, n as usize, &groups).unwrap();
            for (e, hist) in engines.iter().zip(&hists) {
                for (code, &want) in hist.iter().enumerate() {
                    let got = e.i_count_code(n, code as u32).unwrap();
                    h.residual(got.residual);
                    checks += 1;
                    if got.count != want {
                        ok = false;
                        let g = e.group();
                        h.hard(
                            5,
                            format!(
                                "q={q} n={n} ell={} t={} {}: engine {}, scan {want}",
                                g.ell(),
                                g.t(),
                                g.label_of_code(code as u32),
                                got.count
                            ),
                        );
                    }
                }
            }
        }
    }
    h.line(
        5,
        ok,
        format!(
            "{checks} per-class counts agree with sieve scans, q in {{2,3,5}}, l+t <= 4, n <= 10 ({:.1}s)",
            start.elapsed().as_secs_f64()
        ),
    );
}

fn criterion_6(h: &mut Harness) {
    let mut ok = true;
    for (q, max_2n) in [(2u32, 16u32), (3, 12)] {
        let r = verify::oracle(
            Scope {
                q: Some(q),
                max_n: Some(0),
                max_2n: Some(max_2n),
            },
            TOL,
        )
        .unwrap();
        ok &= h.report(6, &r);
    }
    h.line(
        6,
        ok,
        "S_count equals palindrome scans for q=2 degree <= 16 and q=3 degree <= 12, l <= 2".into(),
    );
}

fn criterion_7(h: &mut Harness) {
    let mut ok = true;
    let mut checks = 0;
    for q in [2u32, 3] {
        let r = verify::closed_forms(
            Scope {
                q: Some(q),
                max_n: Some(20),
                max_2n: None,
            },
            TOL,
        )
        .unwrap();
        checks += r.checks;
        ok &= h.report(7, &r);
    }
    h.line(
        7,
        ok,
        format!("{checks} closed-form values agree with the general engine for n <= 20"),
    );
}

fn criterion_8(h: &mut Harness) {
    let mut ok = true;
    let mut checks = 0;
    for q in [2u32, 3, 4] {
        let f = field(q);
        for e in verify::class_engines(&f, 4, TOL).unwrap() {
            let g = e.group();
            for n in 1..=12u32 {
                let counts = e.i_counts_all(n).unwrap();
                let sum: u64 = counts.iter().map(|r| r.count).sum();
                counts.iter().for_each(|r| h.residual(r.residual));
                // x itself has no class once an ending window is prescribed
                let want = i_total(&f, n).unwrap().count - u64::from(g.t() > 0 && n == 1);
                let f_sum: f64 = (0..g.order() as u32).map(|c| e.f_value_code(n, c).unwrap()).sum();
                let f_want = (q as f64).powi(n as i32) - if g.t() > 0 { 1.0 } else { 0.0 };
                checks += 2;
                if sum != want || (f_sum - f_want).abs() >= 1e-6 {
                    ok = false;
                    h.hard(
                        8,
                        format!(
                            "q={q} n={n} ell={} t={}: I sum {sum} vs {want}, F sum {f_sum} vs {f_want}",
                            g.ell(),
                            g.t()
                        ),
                    );
                }
            }
        }
    }
    h.line(
        8,
        ok,
        format!("{checks} partition sums exact for q <= 4, n <= 12, l+t <= 4"),
    );
}

/// Every self-reciprocal irreducible of degree `2n`, bucketed by its first
/// `ell` coefficients below the leading one.
fn leading_histogram(f: &FieldSpec, n: u32, ell: usize, all: &[Poly]) -> HashMap<Vec<FieldElement>, u64> {
    let mut hist: HashMap<Vec<FieldElement>, u64> = vectors(f, ell).map(|c| (c, 0)).collect();
    for p in all {
        *hist.get_mut(&p.leading_coeffs(ell).unwrap()).unwrap() += 1;
    }
    debug_assert_eq!(hist.values().sum::<u64>(), all.len() as u64, "n={n}");
    hist
}

fn criterion_9(h: &mut Harness) {
    let mut ok = true;
    let mut checks = 0u64;
    let mut sampled: Vec<(u32, usize)> = Vec::new();
    let mut skipped: Vec<(u32, usize)> = Vec::new();
    // largest ℓ run through the recursion, largest fully scanned n, largest
    // free half for the sampled scans
    for (q, engine_ell, scan_n, sample_free) in [(2u32, 5usize, 20u32, 0u32), (3, 3, 12, 9)] {
        let f = field(q);
        let counter = SrimCounter::new(&f, TOL);
        let violation = |h: &mut Harness, msg: String| {
            h.hard(9, format!("q={q} {msg}"));
        };
        for n in 2..=20u32 {
            let scanned = (n <= scan_n).then(|| brute_s_capped(&f, 2 * n as usize, &[], usize::MAX).unwrap().witnesses);
            for ell in 1..=(n as usize / 2) {
                let b = bounds(&f, n, ell).unwrap();
                let hist = scanned.as_ref().map(|all| leading_histogram(&f, n, ell, all));
                if ell <= engine_ell {
                    for c in vectors(&f, ell) {
                        let terms = counter.recursion_terms(n, &c).unwrap();
                        h.residual(terms.residual);
                        let s = terms.count().unwrap();
                        checks += 1;
                        let sandwich =
                            s <= terms.i_phi && 2 * s as i128 >= 2 * terms.i_phi as i128 - terms.psi_sum as i128;
                        if !b.contains(s) || !sandwich {
                            ok = false;
                            violation(
                                h,
                                format!(
                                    "n={n} c={c:?}: S={s} bounds ({}, {}) sandwich {sandwich}",
                                    b.lower, b.upper
                                ),
                            );
                        }
                        if let Some(hist) = &hist {
                            if hist[&c] != s {
                                ok = false;
                                violation(h, format!("n={n} c={c:?}: engine {s}, scan {}", hist[&c]));
                            }
                        }
                    }
                } else if let Some(hist) = &hist {
                    for (c, &s) in hist {
                        checks += 1;
                        if !b.contains(s) {
                            ok = false;
                            violation(
                                h,
                                format!("n={n} c={c:?}: scanned S={s} outside ({}, {})", b.lower, b.upper),
                            );
                        }
                    }
                } else if n - (ell as u32) <= sample_free {
                    let samples = [vec![FieldElement::ZERO; ell], vec![FieldElement::ONE; ell]];
                    for c in samples {
                        let s = brute_s(&f, 2 * n as usize, &c).unwrap().count;
                        checks += 1;
                        if !b.contains(s) {
                            ok = false;
                            violation(
                                h,
                                format!("n={n} c={c:?}: sampled S={s} outside ({}, {})", b.lower, b.upper),
                            );
                        }
                    }
                    sampled.push((n, ell));
                } else {
                    skipped.push((n, ell));
                }
            }
        }
    }

    // positivity threshold
    let l100 = positivity_ell(2, 100);
    if l100 != 21 {
        ok = false;
        h.hard(9, format!("positivity threshold at q=2, n=100 is {l100}"));
    }
    let c100 = vec![FieldElement::ZERO; l100 as usize];
    let n100 = match SrimCounter::new(&field(2), TOL).s_count(100, &c100) {
        Ok(r) => format!("count {}", r.count),
        Err(e) => format!("count skipped: {e}"),
    };
    let mut positive = 0;
    for q in [2u32, 3] {
        let f = field(q);
        let counter = SrimCounter::new(&f, TOL);
        for n in 2..=20u32 {
            let l = positivity_ell(q, n);
            if !(1..=3).contains(&l) {
                continue;
            }
            for c in vectors(&f, l as usize) {
                positive += 1;
                if counter.s_count(n, &c).unwrap().count == 0 {
                    ok = false;
                    h.hard(
                        9,
                        format!("q={q} n={n} c={c:?}: zero count below the positivity threshold"),
                    );
                }
            }
        }
    }
    let detail = format!(
        "{checks} counts strictly inside the bounds (engine with sandwich for small l, full palindrome scans for q=2 n<=20 and q=3 n<=12), no violation found; \
         {positive} counts positive at the positivity threshold; q=2 n=100 threshold l={l100}, {n100}; \
         q=3 checked only at two sampled c: {}; q=3 not reached: {}",
        ranges(&sampled),
        ranges(&skipped)
    );
    // counts that could not be computed leave the criterion unproven
    h.line(9, ok && skipped.is_empty(), detail);
}

/// `n=14 l=4-7, n=15 l=5-7` from sorted `(n, ℓ)` pairs.
fn ranges(pairs: &[(u32, usize)]) -> String {
    if pairs.is_empty() {
        return "none".into();
    }
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (n, lo) = pairs[i];
        let mut hi = lo;
        while i + 1 < pairs.len() && pairs[i + 1] == (n, hi + 1) {
            hi += 1;
            i += 1;
        }
        out.push(if lo == hi {
            format!("n={n} l={lo}")
        } else {
            format!("n={n} l={lo}-{hi}")
        });
        i += 1;
    }
    out.join(", ")
}

fn criterion_10(h: &mut Harness) {
    let mut report = Report {
        suite: verify::Suite::Invariants,
        checks: 0,
        mismatches: Vec::new(),
        notes: Vec::new(),
        max_residual: 0.0,
    };
    verify_bases(&mut report).unwrap();
    let mut ok = h.report(10, &report);
    // S values through engines on the reference bases
    let mut s_checks = 0;
    for (q, ell, reference) in [
        (3u32, 1usize, reference_group_q3().unwrap()),
        (2, 2, reference_group_q2().unwrap()),
    ] {
        let f = field(q);
        let plain = SrimCounter::new(&f, TOL);
        let custom = SrimCounter::new(&f, TOL);
        custom
            .install_engine(Arc::new(CharSumEngine::new(Arc::new(reference), TOL)))
            .unwrap();
        if q == 2 {
            let xi = [Poly::parse(&f, "11").unwrap()];
            let lead = decompose(&f, 2, 0, Some(&xi)).unwrap();
            custom
                .install_engine(Arc::new(CharSumEngine::new(Arc::new(lead), TOL)))
                .unwrap();
        }
        for n in 1..=12u32 {
            for c in vectors(&f, ell) {
                let a = plain.s_count(n, &c).unwrap();
                let b = custom.s_count(n, &c).unwrap();
                h.residual(a.residual.max(b.residual));
                s_checks += 1;
                if a.count != b.count {
                    ok = false;
                    h.hard(
                        10,
                        format!(
                            "q={q} n={n} c={c:?}: default basis {}, reference basis {}",
                            a.count, b.count
                        ),
                    );
                }
            }
        }
    }
    h.line(
        10,
        ok,
        format!(
            "{} class counts and {s_checks} S values identical under default and reference bases, n <= 12",
            report.checks
        ),
    );
}

fn verify_bases(report: &mut Report) -> palcount_core::Result<()> {
    verify::basis_invariance(2, 12, TOL, report)?;
    verify::basis_invariance(3, 12, TOL, report)
}

fn main() {
    let mut h = Harness {
        max_residual: 0.0,
        hard_failures: Vec::new(),
    };
    criterion_1(&mut h);
    criterion_2(&mut h);
    criterion_3(&mut h);
    criterion_4(&mut h);
    criterion_5(&mut h);
    criterion_6(&mut h);
    criterion_7(&mut h);
    criterion_8(&mut h);
    criterion_9(&mut h);
    criterion_10(&mut h);
    let ok = h.max_residual < 1e-6;
    if !ok {
        h.hard(11, format!("max residual {:e}", h.max_residual));
    }
    let r = h.max_residual;
    h.line(11, ok, format!("max residual over all engine evaluations {r:e} < 1e-6"));
    if !h.hard_failures.is_empty() {
        for f in &h.hard_failures {
            eprintln!("unexpected: {f}");
        }
        std::process::exit(1);
    }
}
