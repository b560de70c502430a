//! Text formats: character tables and cohomology tables as CSV, cohomology
//! tables as JSON, and polynomial sets read from JSON.
//!
//! Polynomial coefficient lists are written highest degree first, constant
//! term last.

use std::collections::BTreeMap;
use std::fmt::Write;

use equicount_core::{CharacterTable, CohomologyTable, CountPolynomial, CycleType, Partition};
use serde::{Deserialize, Serialize};

fn header(first: &str, parts: &[Partition]) -> String {
    let mut s = String::from(first);
    for p in parts {
        s.push(',');
        s.push_str(&p.exponent_label());
    }
    s
}

/// Rows are irreducibles, columns are classes; both in canonical order.
pub fn character_table_csv(t: &CharacterTable) -> String {
    let mut out = header("irrep", t.partitions());
    out.push('\n');
    for (i, mu) in t.partitions().iter().enumerate() {
        out.push_str(&mu.exponent_label());
        for v in t.row(i) {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out.push_str("class_size");
    for z in t.class_sizes() {
        let _ = write!(out, ",{z}");
    }
    out.push('\n');
    out
}

/// One row per degree `H^k`, columns in canonical partition order, then the
/// total dimension of `H^k`.
pub fn cohomology_csv(t: &CohomologyTable) -> String {
    let mut out = header("degree", t.partitions());
    out.push_str(",dim\n");
    for ((k, row), dim) in t.rows().iter().enumerate().zip(t.total_dimensions()) {
        let _ = write!(out, "H^{k}");
        for v in row {
            let _ = write!(out, ",{v}");
        }
        let _ = writeln!(out, ",{dim}");
    }
    out
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CohomologyJson {
    pub m: u32,
    pub dim: usize,
    /// Dotted partitions in canonical order.
    pub partitions: Vec<String>,
    /// `multiplicities[k][i]`: multiplicity of `partitions[i]` in `H^k`.
    pub multiplicities: Vec<Vec<u64>>,
    pub total_dimensions: Vec<u64>,
}

pub fn cohomology_json(t: &CohomologyTable) -> String {
    let doc = CohomologyJson {
        m: t.m(),
        dim: t.dim(),
        partitions: t.partitions().iter().map(Partition::dotted).collect(),
        multiplicities: t.rows().to_vec(),
        total_dimensions: t.total_dimensions(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n"
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed polynomial file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad cycle type {label:?}: {reason}")]
    BadClass { label: String, reason: String },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PolynomialFile {
    pub m: u32,
    /// Cycle type (dotted) to coefficients, highest degree first.
    pub polynomials: BTreeMap<String, Vec<i128>>,
}

pub fn parse_polynomials(text: &str) -> Result<(u32, BTreeMap<CycleType, CountPolynomial>), FormatError> {
    let file: PolynomialFile = serde_json::from_str(text)?;
    let mut out = BTreeMap::new();
    for (label, coeffs) in file.polynomials {
        let class = CycleType::parse_for(&label, file.m).map_err(|e| FormatError::BadClass {
            label: label.clone(),
            reason: e.to_string(),
        })?;
        out.insert(class, CountPolynomial::from_high(&coeffs));
    }
    Ok((file.m, out))
}

pub fn polynomials_json(m: u32, polys: &BTreeMap<CycleType, CountPolynomial>, degree: usize) -> String {
    let file = PolynomialFile {
        m,
        polynomials: polys.iter().map(|(c, p)| (c.dotted(), p.high_first(degree))).collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes") + "\n"
}
