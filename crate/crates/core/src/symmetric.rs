//! Character theory of `S_m`: class sizes, irreducible characters by the
//! Murnaghan–Nakayama rule, and decomposition of class functions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::partition::{partitions, CycleType, Partition};

/// Largest `m` for which tables are built (`m!` must fit comfortably).
pub const MAX_M: u32 = 12;

pub fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

/// Centralizer order `z_λ = ∏ i^{n_i} n_i!`.
pub fn centralizer_order(class: &CycleType) -> u64 {
    let mut z = 1u64;
    for i in 1..=class.size() {
        let n = class.multiplicity(i);
        z *= u64::from(i).pow(n) * factorial(n);
    }
    z
}

/// Number of permutations with the given cycle type, `m! / z_λ`.
pub fn class_size(class: &CycleType) -> u64 {
    factorial(class.size()) / centralizer_order(class)
}

/// Sign of a permutation of this cycle type.
pub fn sign(class: &CycleType) -> i64 {
    if (class.size() as usize - class.len()) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Dimension of the irreducible indexed by `shape`, from the hook length
/// formula.
pub fn hook_dimension(shape: &Partition) -> u64 {
    let conj = shape.conjugate();
    let mut hooks = 1u64;
    for (i, &row) in shape.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.parts()[j] as usize - i - 1;
            hooks *= (arm + leg + 1) as u64;
        }
    }
    factorial(shape.size()) / hooks
}

/// Beta-set (first-column hook lengths) of a partition with `k` parts.
fn beta_set(parts: &[u32]) -> Vec<u32> {
    let k = parts.len() as u32;
    parts.iter().enumerate().map(|(i, &x)| x + k - 1 - i as u32).collect()
}

fn from_beta_set(mut beta: Vec<u32>) -> Vec<u32> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let k = beta.len() as u32;
    beta.iter()
        .enumerate()
        .map(|(i, &b)| b - (k - 1 - i as u32))
        .filter(|&x| x > 0)
        .collect()
}

struct MnRecursion<'a> {
    cycles: &'a [u32],
    memo: BTreeMap<(Vec<u32>, usize), i64>,
}

impl MnRecursion<'_> {
    /// `χ^shape` evaluated on the cycles from index `next` on.
    fn eval(&mut self, shape: Vec<u32>, next: usize) -> i64 {
        if next == self.cycles.len() {
            return i64::from(shape.is_empty());
        }
        let key = (shape, next);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let r = self.cycles[next];
        let beta = beta_set(&key.0);
        let mut total = 0i64;
        // Each border strip of length r corresponds to moving one bead of the
        // beta-set from b to an empty position b - r; its height is the
        // number of beads passed over.
        for (idx, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let target = b - r;
            let height = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut moved = beta.clone();
            moved[idx] = target;
            let value = self.eval(from_beta_set(moved), next + 1);
            total += if height % 2 == 0 { value } else { -value };
        }
        self.memo.insert(key, total);
        total
    }
}

/// Irreducible character `χ^shape` at the class `class`.
pub fn character(shape: &Partition, class: &CycleType) -> i64 {
    assert_eq!(shape.size(), class.size(), "shape and class must partition the same m");
    let mut rec = MnRecursion {
        cycles: class.parts(),
        memo: BTreeMap::new(),
    };
    rec.eval(shape.parts().to_vec(), 0)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error("m = {0} is outside 1..={MAX_M}")]
    UnsupportedM(u32),
    #[error("class function has {got} values, S_m has {expected} classes")]
    WrongLength { got: usize, expected: usize },
    #[error("multiplicity of {partition} is {numer}/{denom}, not an integer")]
    NonInteger {
        partition: Partition,
        numer: i128,
        denom: i128,
    },
    #[error("multiplicity of {partition} is negative ({value})")]
    Negative { partition: Partition, value: i128 },
}

/// Character table of `S_m`. Rows (irreducibles) and columns (classes) are
/// both indexed by the partitions of `m` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    m: u32,
    partitions: Vec<Partition>,
    class_sizes: Vec<u64>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(m: u32) -> Result<Self, DecompositionError> {
        if m == 0 || m > MAX_M {
            return Err(DecompositionError::UnsupportedM(m));
        }
        let partitions = partitions(m);
        let class_sizes = partitions.iter().map(class_size).collect();
        let values = partitions
            .iter()
            .map(|mu| partitions.iter().map(|lambda| character(mu, lambda)).collect())
            .collect();
        Ok(CharacterTable {
            m,
            partitions,
            class_sizes,
            values,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn order(&self) -> u64 {
        factorial(self.m)
    }

    /// Row of `χ^μ`, where `μ` is the partition at index `row`.
    pub fn row(&self, row: usize) -> &[i64] {
        &self.values[row]
    }

    pub fn value(&self, irrep: usize, class: usize) -> i64 {
        self.values[irrep][class]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }

    /// Multiplicities `⟨χ^μ, f⟩ = (1/m!) Σ_λ |λ| χ^μ(λ) f(λ)` as exact rationals.
    pub fn decompose(&self, values: &[i128]) -> Result<Vec<Ratio<i128>>, DecompositionError> {
        if values.len() != self.partitions.len() {
            return Err(DecompositionError::WrongLength {
                got: values.len(),
                expected: self.partitions.len(),
            });
        }
        let order = i128::from(self.order());
        Ok(self
            .values
            .iter()
            .map(|chi| {
                let s: i128 = chi
                    .iter()
                    .zip(values)
                    .zip(&self.class_sizes)
                    .map(|((&c, &v), &z)| i128::from(c) * v * i128::from(z))
                    .sum();
                Ratio::new(s, order)
            })
            .collect())
    }

    /// Like [`decompose`](Self::decompose) but requires a genuine character:
    /// every multiplicity a nonnegative integer.
    pub fn decompose_character(&self, values: &[i128]) -> Result<Vec<u64>, DecompositionError> {
        let mults = self.decompose(values)?;
        mults
            .into_iter()
            .zip(&self.partitions)
            .map(|(r, p)| {
                if !r.is_integer() {
                    Err(DecompositionError::NonInteger {
                        partition: p.clone(),
                        numer: *r.numer(),
                        denom: *r.denom(),
                    })
                } else if r.to_integer() < 0 {
                    Err(DecompositionError::Negative {
                        partition: p.clone(),
                        value: r.to_integer(),
                    })
                } else {
                    Ok(r.to_integer() as u64)
                }
            })
            .collect()
    }

    /// The class function `Σ_μ mult_μ χ^μ`.
    pub fn compose(&self, multiplicities: &[u64]) -> Vec<i128> {
        (0..self.partitions.len())
            .map(|col| {
                multiplicities
                    .iter()
                    .zip(&self.values)
                    .map(|(&k, row)| i128::from(k) * i128::from(row[col]))
                    .sum()
            })
            .collect()
    }
}
