//! The seven numeric tables: per-class counts for `E^{1,2}` over `F_3` and
//! `E^{2,3}` over `F_2`, and the self-reciprocal counts `S_3(n;a)` and
//! `S_2(n;a_1,a_2)`. Values are always recomputed; the published values are
//! kept separately as reference data for verification.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::charsum::CharSumEngine;
use crate::error::{Error, Result};
use crate::ffpoly::{FieldElement, FieldSpec};
use crate::sripm::{reference_group_q2, reference_group_q3, SrimCounter};

pub const DEFAULT_MAX_N: u32 = 20;

/// Largest row count supported; `3^n` must stay inside the exact float range.
pub const MAX_ROWS: u32 = 32;

const REFERENCE_JSON: &str = include_str!("../data/reference_tables.json");

/// A published cell that disagrees with the recomputed value.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownErratum {
    pub table: u8,
    pub n: u32,
    /// Zero-based value column.
    pub column: usize,
    pub printed: u64,
}

/// Published cells that a direct scan contradicts. In every case the
/// published row also breaks `Σ_ε I(n;ε) = I(n)` or `Σ_a S(n;a) = S(n)`.
///
/// - `I_3(14;ξ₂²)` and `I_3(14;ξ₂⁴)` are printed as 18968; the scan gives 18986.
/// - `I_3(6;ξ₁)` is printed as 8; the scan gives 6.
/// - `S_3(6;1)` is printed as 208; the scan gives 20.
pub const KNOWN_ERRATA: &[KnownErratum] = &[
    KnownErratum {
        table: 1,
        n: 14,
        column: 2,
        printed: 18968,
    },
    KnownErratum {
        table: 1,
        n: 14,
        column: 4,
        printed: 18968,
    },
    KnownErratum {
        table: 2,
        n: 6,
        column: 0,
        printed: 8,
    },
    KnownErratum {
        table: 4,
        n: 6,
        column: 1,
        printed: 208,
    },
];

pub fn known_erratum(table: u8, n: u32, column: usize) -> Option<&'static KnownErratum> {
    KNOWN_ERRATA
        .iter()
        .find(|e| e.table == table && e.n == n && e.column == column)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TableSpec {
    pub id: u8,
    pub max_n: u32,
}

impl TableSpec {
    pub fn new(id: u8, max_n: u32) -> Result<Self> {
        if !(1..=7).contains(&id) {
            return Err(Error::OutOfRange(format!("table id must be 1..7, got {id}")));
        }
        if max_n == 0 || max_n > MAX_ROWS {
            return Err(Error::OutOfRange(format!("max-n must be 1..{MAX_ROWS}, got {max_n}")));
        }
        Ok(TableSpec { id, max_n })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u32,
    pub values: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub id: u8,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
    #[serde(default)]
    pub max_residual: f64,
}

/// Column labels in the `xi1^a*xi2^b` spelling.
pub fn columns(id: u8) -> Vec<String> {
    let cls = |a: u32, b: u32| match a {
        0 => format!("xi2^{b}"),
        1 => format!("xi1*xi2^{b}"),
        _ => format!("xi1^{a}*xi2^{b}"),
    };
    match id {
        1..=3 => (0..6).map(|b| cls(id as u32 - 1, b)).collect(),
        4 => vec!["S3(n;0)".into(), "S3(n;1)".into()],
        5 => (0..2).flat_map(|a| (0..4).map(move |b| cls(a, b))).collect(),
        6 => (2..4).flat_map(|a| (0..4).map(move |b| cls(a, b))).collect(),
        _ => vec![
            "S2(n;0,0)".into(),
            "S2(n;0,1)".into(),
            "S2(n;1,0)".into(),
            "S2(n;1,1)".into(),
        ],
    }
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "Values of I_3(n;xi2^s)",
        2 => "Values of I_3(n;xi1*xi2^s)",
        3 => "Values of I_3(n;xi1^2*xi2^s)",
        4 => "Values of S_3(n;0) and S_3(n;1)=S_3(n;2)",
        5 => "Values of I_2(n;xi2^s) and I_2(n;xi1*xi2^s), 0<=s<=3",
        6 => "Values of I_2(n;xi1^2*xi2^s) and I_2(n;xi1^3*xi2^s), 0<=s<=3",
        _ => "Values of S_2(n;0,0), S_2(n;0,1), S_2(n;1,0), S_2(n;1,1)",
    }
}

/// Exponent vectors `(e_1, e_2)` of the class columns.
fn class_columns(id: u8) -> Vec<[u32; 2]> {
    match id {
        1..=3 => (0..6).map(|b| [id as u32 - 1, b]).collect(),
        5 => (0..2).flat_map(|a| (0..4).map(move |b| [a, b])).collect(),
        _ => (2..4).flat_map(|a| (0..4).map(move |b| [a, b])).collect(),
    }
}

pub fn compute_table(spec: &TableSpec, tolerance: f64) -> Result<Table> {
    let TableSpec { id, max_n } = *spec;
    let mut max_residual: f64 = 0.0;
    let mut rows = Vec::with_capacity(max_n as usize);
    match id {
        1..=3 | 5 | 6 => {
            let group = Arc::new(if id <= 3 {
                reference_group_q3()?
            } else {
                reference_group_q2()?
            });
            let engine = CharSumEngine::new(group.clone(), tolerance);
            let cols = class_columns(id);
            for n in 1..=max_n {
                let mut values = Vec::with_capacity(cols.len());
                for e in &cols {
                    let r = engine.i_count_code(n, group.code_of_exponents(e))?;
                    max_residual = max_residual.max(r.residual);
                    values.push(r.count);
                }
                rows.push(TableRow { n, values });
            }
        }
        4 | 7 => {
            let q = if id == 4 { 3 } else { 2 };
            let field = FieldSpec::prime(q)?;
            let counter = SrimCounter::new(&field, tolerance);
            let leads: Vec<Vec<FieldElement>> = if id == 4 {
                vec![vec![FieldElement::ZERO], vec![FieldElement::ONE]]
            } else {
                [(0, 0), (0, 1), (1, 0), (1, 1)]
                    .iter()
                    .map(|&(a, b)| vec![field.from_int(a), field.from_int(b)])
                    .collect()
            };
            for n in 1..=max_n {
                let mut values = Vec::with_capacity(leads.len());
                for c in &leads {
                    let r = counter.s_count(n, c)?;
                    max_residual = max_residual.max(r.residual);
                    values.push(r.count);
                }
                rows.push(TableRow { n, values });
            }
        }
        _ => return Err(Error::OutOfRange(format!("table id must be 1..7, got {id}"))),
    }
    Ok(Table {
        id,
        title: title(id).into(),
        columns: columns(id),
        rows,
        max_residual,
    })
}

/// The published table `id` (rows `n = 1..20`).
pub fn reference_table(id: u8) -> Result<Table> {
    #[derive(Deserialize)]
    struct Raw {
        columns: Vec<String>,
        rows: Vec<Vec<u64>>,
    }
    let all: std::collections::HashMap<String, Raw> =
        serde_json::from_str(REFERENCE_JSON).map_err(|e| Error::Parse(e.to_string()))?;
    let raw = all
        .get(&format!("table{id}"))
        .ok_or_else(|| Error::OutOfRange(format!("no reference table {id}")))?;
    let rows = raw
        .rows
        .iter()
        .map(|r| TableRow {
            n: r[0] as u32,
            values: r[1..].to_vec(),
        })
        .collect();
    Ok(Table {
        id,
        title: title(id).into(),
        columns: raw.columns.clone(),
        rows,
        max_residual: 0.0,
    })
}
