//! From equivariant count polynomials to cohomology representations.
//!
//! For a minimally pure space of dimension `d`, Frobenius acts on the
//! degree-`k` compactly supported cohomology by `q^(k-d)`, so the character
//! of `S_m` on `H^k` is read off one coefficient at a time:
//! `χ_k(σ) = (-1)^k · [q^(d-k)] |X^{Fσ}|`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::partition::{CycleType, Partition};
use crate::polynomial::{moduli_dimension, CountPolynomial};
use crate::symmetric::{hook_dimension, CharacterTable, DecompositionError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PurityError {
    #[error("no count polynomial for class {0}")]
    MissingClass(CycleType),
    #[error("class {class} has degree {degree}, above the dimension {dim}")]
    DegreeTooHigh {
        class: CycleType,
        degree: usize,
        dim: usize,
    },
    #[error("H^{degree}: {source}")]
    Decomposition {
        degree: usize,
        #[source]
        source: DecompositionError,
    },
}

/// Multiplicity of every irreducible of `S_m` in each `H^k`, `0 <= k <= d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    m: u32,
    dim: usize,
    partitions: Vec<Partition>,
    /// `rows[k][i]` is the multiplicity of `partitions[i]` in `H^k`.
    rows: Vec<Vec<u64>>,
}

impl CohomologyTable {
    pub fn new(m: u32, dim: usize, partitions: Vec<Partition>, rows: Vec<Vec<u64>>) -> Self {
        assert_eq!(rows.len(), dim + 1);
        assert!(rows.iter().all(|r| r.len() == partitions.len()));
        CohomologyTable {
            m,
            dim,
            partitions,
            rows,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn multiplicity(&self, degree: usize, irrep: &Partition) -> u64 {
        let i = self
            .partitions
            .iter()
            .position(|p| p == irrep)
            .expect("partition of m");
        self.rows[degree][i]
    }

    /// `dim H^k` for each `k`.
    pub fn total_dimensions(&self) -> Vec<u64> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.partitions)
                    .map(|(&k, mu)| k * hook_dimension(mu))
                    .sum()
            })
            .collect()
    }
}

/// `χ_k` as a class function in canonical class order.
pub fn extract_character(
    polys: &BTreeMap<CycleType, CountPolynomial>,
    classes: &[CycleType],
    k: usize,
    dim: usize,
) -> Result<Vec<i128>, PurityError> {
    let sign = if k % 2 == 0 { 1 } else { -1 };
    classes
        .iter()
        .map(|c| {
            let poly = polys.get(c).ok_or_else(|| PurityError::MissingClass(c.clone()))?;
            Ok(sign * poly.coefficient(dim - k))
        })
        .collect()
}

/// Decomposes every degree into irreducibles. Fails on the first degree
/// whose character is not a genuine one (non-integral or negative
/// multiplicity): either a count is wrong or the space is not minimally pure.
pub fn cohomology_table(
    polys: &BTreeMap<CycleType, CountPolynomial>,
    m: u32,
) -> Result<CohomologyTable, PurityError> {
    let table = CharacterTable::new(m).map_err(|source| PurityError::Decomposition { degree: 0, source })?;
    let dim = moduli_dimension(m);
    let classes = table.partitions().to_vec();
    for c in &classes {
        let poly = polys.get(c).ok_or_else(|| PurityError::MissingClass(c.clone()))?;
        if poly.degree() > dim {
            return Err(PurityError::DegreeTooHigh {
                class: c.clone(),
                degree: poly.degree(),
                dim,
            });
        }
    }
    let mut rows = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        let chi = extract_character(polys, &classes, k, dim)?;
        let mults = table
            .decompose_character(&chi)
            .map_err(|source| PurityError::Decomposition { degree: k, source })?;
        rows.push(mults);
    }
    Ok(CohomologyTable::new(m, dim, classes, rows))
}

/// Rebuilds the count polynomials: the coefficient of `q^(d-k)` at class `λ`
/// is `(-1)^k χ_k(λ)`.
pub fn round_trip(table: &CohomologyTable) -> BTreeMap<CycleType, CountPolynomial> {
    let chars = CharacterTable::new(table.m).expect("table was built for a supported m");
    let by_degree: Vec<Vec<i128>> = table.rows.iter().map(|r| chars.compose(r)).collect();
    chars
        .partitions()
        .iter()
        .enumerate()
        .map(|(col, class)| {
            let mut coeffs = alloc::vec![0i128; table.dim + 1];
            for (k, chi) in by_degree.iter().enumerate() {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                coeffs[table.dim - k] = sign * chi[col];
            }
            (class.clone(), CountPolynomial::from_low(coeffs))
        })
        .collect()
}

/// Betti numbers of the unordered space: the multiplicity of the trivial
/// representation in each degree.
pub fn unordered_poincare(table: &CohomologyTable) -> Vec<u64> {
    table.rows.iter().map(|r| r[0]).collect()
}

/// Reference decomposition for seven points in general linear position,
/// columns in canonical partition order.
const TABLE2: [[u64; 15]; 7] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 1, 3, 1, 3, 1, 3, 1, 1, 0, 0, 0, 0, 0],
    [0, 3, 6, 9, 7, 15, 10, 9, 6, 12, 3, 5, 3, 0, 0],
    [3, 9, 21, 19, 20, 47, 27, 25, 29, 42, 20, 17, 13, 6, 1],
    [3, 14, 34, 31, 31, 78, 42, 44, 48, 75, 34, 30, 29, 13, 1],
    [2, 9, 18, 25, 23, 50, 31, 34, 28, 52, 19, 23, 22, 9, 4],
];

pub fn builtin_table2() -> CohomologyTable {
    CohomologyTable::new(
        7,
        6,
        crate::partition::partitions(7),
        TABLE2.iter().map(|r| r.to_vec()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::builtin_table1;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn character_extraction_examples() {
        let t1 = builtin_table1();
        let classes = crate::partition::partitions(7);
        let chi0 = extract_character(&t1, &classes, 0, 6).unwrap();
        assert!(chi0.iter().all(|&v| v == 1));
        let chi1 = extract_character(&t1, &classes, 1, 6).unwrap();
        assert_eq!(chi1[14], 28);
        assert_eq!(chi1[13], 10);
        assert_eq!(chi1[2], 0);
    }

    #[test]
    fn reproduces_reference_decomposition() {
        let table = cohomology_table(&builtin_table1(), 7).unwrap();
        assert_eq!(table, builtin_table2());
        assert_eq!(table.multiplicity(1, &p("5.2")), 1);
        assert_eq!(table.multiplicity(1, &p("4.3")), 1);
        assert_eq!(table.total_dimensions(), [1, 28, 323, 1952, 6462, 11004, 7470]);
    }

    #[test]
    fn round_trip_is_identity() {
        let t1 = builtin_table1();
        assert_eq!(round_trip(&cohomology_table(&t1, 7).unwrap()), t1);
    }

    #[test]
    fn trivial_table_gives_top_monomial() {
        let mut rows = alloc::vec![alloc::vec![0u64; 15]; 7];
        rows[0][0] = 1;
        let t = CohomologyTable::new(7, 6, crate::partition::partitions(7), rows);
        for poly in round_trip(&t).values() {
            assert_eq!(*poly, CountPolynomial::monomial(6));
        }
    }

    #[test]
    fn unordered_betti_numbers() {
        assert_eq!(unordered_poincare(&builtin_table2()), [1, 0, 0, 0, 3, 3, 2]);
    }

    #[test]
    fn perturbed_input_fails_with_degree() {
        let mut t1 = builtin_table1();
        t1.insert(p("7"), CountPolynomial::from_high(&[1, 1, 1, 1, 1, 0, 1]));
        match cohomology_table(&t1, 7) {
            Err(PurityError::Decomposition { degree: 1, .. }) => {}
            other => panic!("expected a degree-1 failure, got {other:?}"),
        }
        let mut missing = builtin_table1();
        missing.remove(&p("4.3"));
        assert_eq!(cohomology_table(&missing, 7), Err(PurityError::MissingClass(p("4.3"))));
    }
}
