//! Integer partitions, used both as cycle types (conjugacy classes of `S_m`)
//! and as labels of irreducible representations.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write};
use core::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("empty partition")]
    Empty,
    #[error("invalid part {0:?}")]
    BadPart(String),
    #[error("partition sums to {got}, expected {expected}")]
    WrongSum { got: u32, expected: u32 },
}

/// Weakly decreasing positive parts.
///
/// The ordering is the canonical one: reverse lexicographic, so `(m)` comes
/// first and `(1^m)` last.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A conjugacy class of `S_m`, given by its cycle lengths.
pub type CycleType = Partition;

impl Partition {
    /// Sorts the parts into canonical (descending) form.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::Empty);
        }
        if parts.contains(&0) {
            return Err(PartitionError::BadPart("0".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The number being partitioned.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `k`.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.parts.iter().filter(|&&x| x == k).count() as u32
    }

    /// Least common multiple of the parts.
    pub fn lcm(&self) -> u64 {
        self.parts
            .iter()
            .fold(1, |acc, &x| crate::numtheory::lcm(acc, u64::from(x)))
    }

    /// Parses and checks that the parts sum to `m`.
    pub fn parse_for(s: &str, m: u32) -> Result<Self, PartitionError> {
        let p: Partition = s.parse()?;
        if p.size() != m {
            return Err(PartitionError::WrongSum {
                got: p.size(),
                expected: m,
            });
        }
        Ok(p)
    }

    /// Dotted form, e.g. `2.2.1.1.1`.
    pub fn dotted(&self) -> String {
        let mut s = String::new();
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                s.push('.');
            }
            let _ = write!(s, "{x}");
        }
        s
    }

    /// Exponent notation used in printed tables, e.g. `2^21^3` or `61`.
    pub fn exponent_label(&self) -> String {
        let mut s = String::new();
        let mut i = 0;
        while i < self.parts.len() {
            let x = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&y| y == x).count();
            let _ = write!(s, "{x}");
            if run > 1 {
                let _ = write!(s, "^{run}");
            }
            i += run;
        }
        s
    }

    /// The conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts[0];
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&x| x >= j).count() as u32)
            .collect();
        Partition { parts }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.exponent_label())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dotted())
    }
}

/// Accepts dotted parts with `kxn` shorthand for `n` copies of `k`:
/// `2.2.1.1.1`, `1x8`, `3.1x4`.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = Vec::new();
        for tok in s.trim().split('.') {
            let bad = || PartitionError::BadPart(tok.into());
            let (part, count) = match tok.split_once('x') {
                Some((a, b)) => (a, b.parse::<u32>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let part: u32 = part.parse().map_err(|_| bad())?;
            if part == 0 || count == 0 {
                return Err(bad());
            }
            parts.extend(core::iter::repeat(part).take(count as usize));
        }
        Partition::new(parts)
    }
}

/// All partitions of `m` in canonical order, starting from `(m)`.
pub fn partitions(m: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for x in (1..=rest.min(max)).rev() {
            cur.push(x);
            rec(rest - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(m, m, &mut Vec::new(), &mut out);
    }
    out
}
