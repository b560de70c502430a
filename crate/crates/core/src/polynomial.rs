//! Integer polynomials in `q`, exact interpolation from prime samples, and
//! the reference point-count polynomials for seven points in general linear
//! position.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::partition::{CycleType, Partition};

/// Integer coefficients, stored constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountPolynomial {
    coeffs: Vec<i128>,
}

impl CountPolynomial {
    /// From coefficients listed constant term first.
    pub fn from_low(mut coeffs: Vec<i128>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        CountPolynomial { coeffs }
    }

    /// From coefficients listed highest degree first (constant term last).
    pub fn from_high(coeffs: &[i128]) -> Self {
        Self::from_low(coeffs.iter().rev().copied().collect())
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = 1;
        CountPolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coefficient(&self, k: usize) -> i128 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn low_first(&self) -> &[i128] {
        &self.coeffs
    }

    /// Coefficients of `q^d, ..., q^0`, padded to `d + 1` entries.
    pub fn high_first(&self, d: usize) -> Vec<i128> {
        (0..=d.max(self.degree())).rev().map(|k| self.coefficient(k)).collect()
    }

    pub fn evaluate(&self, q: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }
}

impl fmt::Display for CountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c == 0 {
                continue;
            }
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            match (k, mag) {
                (0, _) => {
                    let _ = write!(out, "{mag}");
                }
                (_, 1) => {}
                _ => {
                    let _ = write!(out, "{mag}");
                }
            }
            match k {
                0 => {}
                1 => out.push('q'),
                _ => {
                    let _ = write!(out, "q^{k}");
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InterpolationError {
    #[error("need at least {needed} samples for degree {degree}, got {got}")]
    InsufficientSamples {
        needed: usize,
        degree: usize,
        got: usize,
    },
    #[error("sample points are not distinct (q = {0} repeated)")]
    RepeatedPoint(u64),
    #[error("coefficient of q^{power} is {numer}/{denom}, not an integer")]
    NonInteger {
        power: usize,
        numer: String,
        denom: String,
    },
    #[error("coefficient of q^{power} does not fit in 128 bits")]
    Overflow { power: usize },
    #[error("sample at q = {q} is {got} but the interpolant gives {expected}")]
    Inconsistent { q: u64, got: i128, expected: i128 },
}

/// Exact Lagrange interpolation over the rationals. The first
/// `degree_bound + 1` samples determine the polynomial; any further samples
/// must agree with it.
pub fn interpolate(
    samples: &[(u64, i128)],
    degree_bound: usize,
) -> Result<CountPolynomial, InterpolationError> {
    let n = degree_bound + 1;
    if samples.len() < n {
        return Err(InterpolationError::InsufficientSamples {
            needed: n,
            degree: degree_bound,
            got: samples.len(),
        });
    }
    for (i, &(x, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|&(y, _)| y == x) {
            return Err(InterpolationError::RepeatedPoint(x));
        }
    }
    let basis = &samples[..n];
    let mut acc = vec![BigRational::zero(); n];
    for (i, &(xi, yi)) in basis.iter().enumerate() {
        // Numerator polynomial prod_{j != i} (q - x_j), low-first.
        let mut num = vec![BigInt::from(1)];
        let mut denom = BigInt::from(1);
        for (j, &(xj, _)) in basis.iter().enumerate() {
            if j == i {
                continue;
            }
            let xj = BigInt::from(xj);
            let mut next = vec![BigInt::zero(); num.len() + 1];
            for (k, c) in num.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xj;
            }
            num = next;
            denom *= BigInt::from(xi) - xj;
        }
        let scale = BigRational::new(BigInt::from(yi), denom);
        for (k, c) in num.into_iter().enumerate() {
            acc[k] += &scale * BigRational::from_integer(c);
        }
    }
    let mut coeffs = Vec::with_capacity(n);
    for (power, c) in acc.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(InterpolationError::NonInteger {
                power,
                numer: alloc::format!("{}", c.numer()),
                denom: alloc::format!("{}", c.denom()),
            });
        }
        coeffs.push(c.to_integer().to_i128().ok_or(InterpolationError::Overflow { power })?);
    }
    let poly = CountPolynomial::from_low(coeffs);
    for &(q, got) in &samples[n..] {
        let expected = poly.evaluate(i128::from(q));
        if expected != got {
            return Err(InterpolationError::Inconsistent { q, got, expected });
        }
    }
    Ok(poly)
}

/// Dimension of the moduli space of `m` points in P^2 up to PGL(3):
/// `2m - 8`, the degree of every count polynomial.
pub fn moduli_dimension(m: u32) -> usize {
    (2 * m as usize).saturating_sub(8)
}

/// Reference `S_7`-equivariant counts, one polynomial per cycle type,
/// coefficients highest degree first.
const TABLE1: [(&str, [i128; 7]); 15] = [
    ("7", [1, 0, 1, 1, 1, 0, 1]),
    ("6.1", [1, 1, 1, 0, -1, 0, 0]),
    ("5.2", [1, 0, 1, -1, 0, -1, 0]),
    ("5.1.1", [1, 2, 3, 3, 2, 1, 0]),
    ("4.3", [1, -1, -1, 1, 0, 0, 0]),
    ("4.2.1", [1, 0, -3, 0, 0, 0, 2]),
    ("4.1.1.1", [1, 2, -1, -2, 0, 0, 0]),
    ("3.3.1", [1, -1, -1, -8, 9, 6, 18]),
    ("3.2.2", [1, -1, -1, 1, 0, 0, 0]),
    ("3.2.1.1", [1, -1, -1, 1, 0, 0, 0]),
    ("3.1.1.1.1", [1, -1, -1, 1, 0, 0, 0]),
    ("2.2.2.1", [1, -2, -11, 18, 38, -36, -48]),
    ("2.2.1.1.1", [1, -4, -1, 16, -6, -12, 6]),
    ("2.1.1.1.1.1", [1, -10, 41, -86, 90, -36, 0]),
    ("1.1.1.1.1.1.1", [1, -28, 323, -1952, 6462, -11004, 7470]),
];

/// Point counts of seven points in general linear position modulo PGL(3),
/// twisted by each conjugacy class of `S_7`.
pub fn builtin_table1() -> BTreeMap<CycleType, CountPolynomial> {
    TABLE1
        .iter()
        .map(|(class, coeffs)| {
            let class: Partition = class.parse().expect("valid table label");
            (class, CountPolynomial::from_high(coeffs))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions;

    fn row(label: &str) -> CountPolynomial {
        builtin_table1()[&label.parse::<Partition>().unwrap()].clone()
    }

    #[test]
    fn evaluations() {
        assert_eq!(row("7").evaluate(3), 847);
        assert_eq!(row("1x7").evaluate(3), 0);
        assert_eq!(row("1x7").evaluate(5), 0);
        assert_eq!(row("1x7").evaluate(7), 120);
        assert_eq!(row("3.3.1").evaluate(3), 306);
        assert_eq!(row("2.2.1.1.1").evaluate(3), 24);
        assert_eq!(row("3.1x4").evaluate(3), 432);
        assert_eq!(row("7").evaluate(5), 16_401);
    }

    #[test]
    fn lookups() {
        assert_eq!(row("6.1"), CountPolynomial::from_high(&[1, 1, 1, 0, -1, 0, 0]));
        assert_eq!(row("4.3").to_string(), "q^6 - q^5 - q^4 + q^3");
        assert_eq!(row("6.1").to_string(), "q^6 + q^5 + q^4 - q^2");
        assert_eq!(
            row("1x7").to_string(),
            "q^6 - 28q^5 + 323q^4 - 1952q^3 + 6462q^2 - 11004q + 7470"
        );
    }

    #[test]
    fn table_integrity() {
        let t = builtin_table1();
        assert_eq!(t.len(), 15);
        assert!(t.keys().cloned().eq(partitions(7)));
        for p in t.values() {
            assert!(p.is_monic());
            assert_eq!(p.degree(), 6);
        }
        let shared = row("4.3");
        for label in ["3.2.2", "3.2.1.1", "3.1x4"] {
            assert_eq!(row(label), shared);
        }
    }

    #[test]
    fn lemma_formula_divides_exactly() {
        // (q^14 - q^9 - q^8 + q^3) / |PGL(3, F_q)| equals the class-[7] row.
        for q in [3i128, 5, 7, 11, 13] {
            let raw = q.pow(14) - q.pow(9) - q.pow(8) + q.pow(3);
            let pgl = crate::plane::pgl_order(q as u64) as i128;
            assert_eq!(raw % pgl, 0);
            assert_eq!(raw / pgl, row("7").evaluate(q));
        }
    }

    #[test]
    fn interpolation_recovers_known_polynomials() {
        let primes = [3u64, 5, 7, 11, 13, 17, 19];
        let constant: Vec<_> = primes.iter().map(|&p| (p, 1)).collect();
        assert_eq!(interpolate(&constant[..1], 0).unwrap(), CountPolynomial::from_low(vec![1]));
        let sixth: Vec<_> = primes.iter().map(|&p| (p, (p as i128).pow(6))).collect();
        assert_eq!(interpolate(&sixth, 6).unwrap().high_first(6), [1, 0, 0, 0, 0, 0, 0]);
        for poly in builtin_table1().values() {
            let samples: Vec<_> = primes.iter().map(|&p| (p, poly.evaluate(p as i128))).collect();
            assert_eq!(&interpolate(&samples, 6).unwrap(), poly);
        }
    }

    #[test]
    fn interpolation_errors() {
        assert!(matches!(
            interpolate(&[(3, 1)], 2),
            Err(InterpolationError::InsufficientSamples { needed: 3, .. })
        ));
        assert_eq!(
            interpolate(&[(3, 1), (3, 2)], 1),
            Err(InterpolationError::RepeatedPoint(3))
        );
        // The line through (3, 0) and (5, 1) is (q - 3) / 2.
        assert!(matches!(
            interpolate(&[(3, 0), (5, 1)], 1),
            Err(InterpolationError::NonInteger { power: 0, .. })
        ));
        assert!(matches!(
            interpolate(&[(3, 3), (5, 5), (7, 8)], 1),
            Err(InterpolationError::Inconsistent { q: 7, got: 8, expected: 7 })
        ));
    }

    #[test]
    fn dimension() {
        assert_eq!(moduli_dimension(7), 6);
        assert_eq!(moduli_dimension(8), 8);
    }
}
