//! Finite fields `F_{p^c}` for odd primes `p`.
//!
//! [`ExtensionField`] uses the polynomial basis over the canonical modulus (the
//! lexicographically least monic irreducible, constant term compared first).
//! Elements are packed as the integer `a_0 + a_1 p + ... + a_{c-1} p^{c-1}`.
//! [`ZechField`] is a log-table representation of the same field for the hot
//! enumeration loop. Both implement [`FieldOps`].

mod poly;
mod zech;

use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

pub use poly::{canonical_modulus, is_irreducible};
pub use zech::{ZechField, ZECH_LIMIT};

use crate::numtheory::{checked_pow, is_prime};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("characteristic {0} is not an odd prime")]
    BadCharacteristic(u64),
    #[error("extension degree {0} is outside 1..={MAX_DEGREE}")]
    BadDegree(u32),
    #[error("field of order {p}^{degree} does not fit the packed representation")]
    TooLarge { p: u64, degree: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("{d} does not divide the extension degree {degree}")]
    NotADivisor { d: u32, degree: u32 },
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadCoefficients { got: usize, expected: usize },
}

/// Arithmetic shared by every field backend.
///
/// These operations are unchecked: mixing elements of different fields is a
/// logic error. [`ExtensionField`] has checked variants.
pub trait FieldOps: Sync {
    type Elem: Copy + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    fn degree(&self) -> u32;
    /// Number of elements, `p^degree`.
    fn order(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: Self::Elem) -> bool;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    /// `a^p`.
    fn frobenius(&self, a: Self::Elem) -> Self::Elem;

    /// Element from its packed polynomial-basis integer.
    fn from_packed(&self, v: u64) -> Self::Elem;
    fn to_packed(&self, a: Self::Elem) -> u64;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    /// Image of an integer under `Z -> F_p -> F_{p^c}`.
    fn from_int(&self, n: i64) -> Self::Elem {
        let p = i64::from(self.characteristic());
        self.from_packed(n.rem_euclid(p) as u64)
    }

    fn pow(&self, a: Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Elements of the unique subfield of order `p^d`.
    fn subfield(&self, d: u32) -> Result<Vec<Self::Elem>, FieldError>;

    fn frobenius_iter(&self, a: Self::Elem, times: u32) -> Self::Elem {
        (0..times).fold(a, |x, _| self.frobenius(x))
    }

    /// Smallest `d >= 1` with `a` in `F_{p^d}`; always divides the degree.
    fn element_degree(&self, a: Self::Elem) -> u32 {
        let mut x = self.frobenius(a);
        let mut d = 1;
        while x != a {
            x = self.frobenius(x);
            d += 1;
        }
        d
    }
}

/// An element of an [`ExtensionField`], tagged with the field it lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    packed: u64,
    p: u32,
    degree: u32,
}

impl FieldElement {
    pub fn packed(&self) -> u64 {
        self.packed
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = unpack(self.packed, self.p, self.degree);
        let mut first = true;
        for (i, &a) in digits.iter().enumerate().take(self.degree as usize).rev() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn unpack(mut v: u64, p: u32, degree: u32) -> [u64; MAX_DEGREE as usize] {
    let mut out = [0u64; MAX_DEGREE as usize];
    let p = u64::from(p);
    for slot in out.iter_mut().take(degree as usize) {
        *slot = v % p;
        v /= p;
    }
    out
}

fn pack(digits: &[u64], p: u32) -> u64 {
    let p = u64::from(p);
    digits.iter().rev().fold(0u64, |acc, &d| acc * p + d)
}

/// `F_{p^c}` in the polynomial basis over its canonical modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField {
    p: u32,
    degree: u32,
    modulus: Vec<u32>,
    order: u64,
}

impl ExtensionField {
    /// Builds `F_{p^c}` over the canonical modulus.
    pub fn new(p: u64, degree: u32) -> Result<Self, FieldError> {
        if p == 2 || !is_prime(p) || p >= 1 << 31 {
            return Err(FieldError::BadCharacteristic(p));
        }
        if degree == 0 || degree > MAX_DEGREE {
            return Err(FieldError::BadDegree(degree));
        }
        let order = checked_pow(p, degree)
            .filter(|&q| q < 1 << 62)
            .ok_or(FieldError::TooLarge { p, degree })?;
        let p = p as u32;
        Ok(ExtensionField {
            p,
            degree,
            modulus: canonical_modulus(p, degree),
            order,
        })
    }

    /// Monic modulus, constant term first (length `degree + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Element with the given polynomial-basis coefficients, constant term first.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.degree as usize {
            return Err(FieldError::BadCoefficients {
                got: coeffs.len(),
                expected: self.degree as usize,
            });
        }
        let digits: Vec<u64> = coeffs.iter().map(|&a| u64::from(a % self.p)).collect();
        Ok(self.wrap(pack(&digits, self.p)))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        unpack(a.packed, self.p, self.degree)[..self.degree as usize]
            .iter()
            .map(|&d| d as u32)
            .collect()
    }

    /// All elements, in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|v| self.wrap(v))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.p == self.p && a.degree == self.degree
    }

    fn wrap(&self, packed: u64) -> FieldElement {
        FieldElement {
            packed,
            p: self.p,
            degree: self.degree,
        }
    }

    fn check(&self, a: FieldElement) -> Result<(), FieldError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn checked_neg(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.neg(a))
    }

    pub fn checked_inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.inv(a).ok_or(FieldError::ZeroInverse)
    }

    pub fn checked_pow(&self, a: FieldElement, exp: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.pow(a, exp))
    }

    pub fn checked_frobenius(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.frobenius(a))
    }

    /// Element of `F_{p^d}` generating it over `F_p`, found as a norm
    /// `a^((q-1)/(p^d-1))` of some element of the big field.
    fn subfield_generator(&self, d: u32) -> FieldElement {
        let sub_order = u64::from(self.p).pow(d);
        let cofactor = (self.order - 1) / (sub_order - 1);
        (1..self.order)
            .map(|v| self.pow(self.wrap(v), cofactor))
            .find(|&b| self.element_degree(b) == d)
            .expect("norm map onto F_{p^d}* reaches a generator")
    }

    /// The unique subfield of order `p^d`, as the `F_p`-span of
    /// `1, b, ..., b^(d-1)` for a generator `b`. Sorted by packed value.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<FieldElement>, FieldError> {
        if d == 0 || self.degree % d != 0 {
            return Err(FieldError::NotADivisor {
                d,
                degree: self.degree,
            });
        }
        let b = self.subfield_generator(d);
        let basis: Vec<FieldElement> = (0..d).map(|i| self.pow(b, u64::from(i))).collect();
        let count = u64::from(self.p).pow(d);
        let mut out = Vec::with_capacity(count as usize);
        for idx in 0..count {
            let mut rest = idx;
            let mut acc = self.zero();
            for &e in &basis {
                let c = (rest % u64::from(self.p)) as i64;
                rest /= u64::from(self.p);
                acc = self.add(acc, self.mul(self.from_int(c), e));
            }
            out.push(acc);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// True iff `a^(p^d) = a`, i.e. `a` lies in the subfield of order `p^d`.
    pub fn in_subfield(&self, a: FieldElement, d: u32) -> bool {
        self.pow(a, u64::from(self.p).pow(d)) == a
    }

    /// A generator of the multiplicative group, least in packed order.
    pub fn primitive_element(&self) -> FieldElement {
        let n = self.order - 1;
        let factors = crate::numtheory::prime_factors(n);
        (1..self.order)
            .map(|v| self.wrap(v))
            .find(|&g| factors.iter().all(|&r| self.pow(g, n / r) != self.one()))
            .expect("multiplicative group is cyclic")
    }

    pub(crate) fn raw_mul(&self, a: u64, b: u64) -> u64 {
        let p = u64::from(self.p);
        let c = self.degree as usize;
        if c == 1 {
            return a * b % p;
        }
        let da = unpack(a, self.p, self.degree);
        let db = unpack(b, self.p, self.degree);
        let mut prod = [0u64; 2 * MAX_DEGREE as usize];
        for i in 0..c {
            if da[i] == 0 {
                continue;
            }
            for j in 0..c {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (c..2 * c - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            let shift = k - c;
            for i in 0..c {
                let m = u64::from(self.modulus[i]);
                prod[shift + i] = (prod[shift + i] + (p - t) * m) % p;
            }
            prod[k] = 0;
        }
        pack(&prod[..c], self.p)
    }

    pub(crate) fn raw_add(&self, a: u64, b: u64) -> u64 {
        let p = u64::from(self.p);
        if self.degree == 1 {
            return (a + b) % p;
        }
        let da = unpack(a, self.p, self.degree);
        let db = unpack(b, self.p, self.degree);
        let mut s = [0u64; MAX_DEGREE as usize];
        for i in 0..self.degree as usize {
            s[i] = (da[i] + db[i]) % p;
        }
        pack(&s[..self.degree as usize], self.p)
    }
}

impl FieldOps for ExtensionField {
    type Elem = FieldElement;

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn degree(&self) -> u32 {
        self.degree
    }

    fn order(&self) -> u64 {
        self.order
    }

    fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    fn is_zero(&self, a: FieldElement) -> bool {
        a.packed == 0
    }

    fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        self.wrap(self.raw_add(a.packed, b.packed))
    }

    fn neg(&self, a: FieldElement) -> FieldElement {
        let p = u64::from(self.p);
        let mut d = unpack(a.packed, self.p, self.degree);
        for x in d.iter_mut().take(self.degree as usize) {
            *x = (p - *x) % p;
        }
        self.wrap(pack(&d[..self.degree as usize], self.p))
    }

    fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        self.wrap(self.raw_mul(a.packed, b.packed))
    }

    fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.packed == 0 {
            None
        } else {
            Some(self.pow(a, self.order - 2))
        }
    }

    fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, u64::from(self.p))
    }

    fn from_packed(&self, v: u64) -> FieldElement {
        debug_assert!(v < self.order);
        self.wrap(v)
    }

    fn to_packed(&self, a: FieldElement) -> u64 {
        a.packed
    }

    fn subfield(&self, d: u32) -> Result<Vec<FieldElement>, FieldError> {
        self.subfield_elements(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, c: u32) -> ExtensionField {
        ExtensionField::new(p, c).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(ExtensionField::new(2, 1), Err(FieldError::BadCharacteristic(2)));
        assert_eq!(ExtensionField::new(9, 1), Err(FieldError::BadCharacteristic(9)));
        assert_eq!(ExtensionField::new(3, 0), Err(FieldError::BadDegree(0)));
        assert_eq!(ExtensionField::new(3, 17), Err(FieldError::BadDegree(17)));
        assert!(matches!(ExtensionField::new(65537, 16), Err(FieldError::TooLarge { .. })));
    }

    #[test]
    fn prime_field_has_modulus_x() {
        let k = f(3, 1);
        assert_eq!(k.modulus(), &[0, 1]);
        assert_eq!(k.order(), 3);
    }

    #[test]
    fn construction_is_deterministic() {
        assert_eq!(f(3, 7).modulus(), f(3, 7).modulus());
        assert_eq!(f(3, 7).order(), 2187);
    }

    #[test]
    fn degree_seven_element_orders_divide_2186() {
        let k = f(3, 7);
        for a in k.elements().skip(1).step_by(37) {
            assert_eq!(k.pow(a, 2186), k.one());
        }
    }

    #[test]
    fn inverse_of_one_and_zero() {
        let k = f(5, 3);
        assert_eq!(k.checked_inv(k.one()), Ok(k.one()));
        assert_eq!(k.checked_inv(k.zero()), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn f9_inverses_exhaustive() {
        let k = f(3, 2);
        for a in k.elements().skip(1) {
            assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
        }
    }

    #[test]
    fn pow_order_is_identity() {
        for (p, c) in [(3, 1), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let k = f(p, c);
            for a in k.elements() {
                assert_eq!(k.pow(a, k.order()), a);
            }
        }
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = f(3, 2);
        let b = f(3, 3);
        let x = a.one();
        let y = b.one();
        assert_eq!(a.checked_add(x, y), Err(FieldError::FieldMismatch));
        assert_eq!(a.checked_mul(y, x), Err(FieldError::FieldMismatch));
        assert_eq!(a.checked_inv(y), Err(FieldError::FieldMismatch));
    }

    #[test]
    fn frobenius_fixes_prime_field_and_has_order_c() {
        let k = f(3, 7);
        for v in 0..3 {
            let a = k.from_int(v);
            assert_eq!(k.frobenius(a), a);
        }
        for a in k.elements().step_by(11) {
            assert_eq!(k.frobenius_iter(a, 7), a);
        }
    }

    #[test]
    fn frobenius_fixed_set_of_f9_has_three_elements() {
        let k = f(3, 2);
        let fixed = k.elements().filter(|&a| k.frobenius(a) == a).count();
        assert_eq!(fixed, 3);
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism() {
        for (p, c) in [(3, 4), (5, 2), (7, 2), (3, 3)] {
            let k = f(p, c);
            for a in k.elements() {
                for b in k.elements() {
                    assert_eq!(k.frobenius(k.mul(a, b)), k.mul(k.frobenius(a), k.frobenius(b)));
                    assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn ring_axioms_small_fields_exhaustive() {
        for (p, c) in [(3, 2), (3, 3), (5, 2)] {
            let k = f(p, c);
            let all: Vec<_> = k.elements().collect();
            for &a in &all {
                for &b in &all {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for &c in &all {
                        assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                        assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn subfield_of_f9_is_prime_field() {
        let k = f(3, 2);
        let sub = k.subfield_elements(1).unwrap();
        let expected: Vec<_> = (0..3).map(|v| k.from_int(v)).collect();
        assert_eq!(sub, expected);
    }

    #[test]
    fn subfield_nine_inside_f729() {
        let k = f(3, 6);
        let sub = k.subfield_elements(2).unwrap();
        assert_eq!(sub.len(), 9);
        for &a in &sub {
            assert_eq!(k.frobenius_iter(a, 2), a);
            assert!(k.in_subfield(a, 2));
        }
        for &a in &sub {
            for &b in &sub {
                assert!(sub.binary_search(&k.add(a, b)).is_ok());
                assert!(sub.binary_search(&k.mul(a, b)).is_ok());
            }
        }
        let fixed = k.elements().filter(|&a| k.in_subfield(a, 2)).count();
        assert_eq!(fixed, 9);
    }

    #[test]
    fn full_subfield_is_whole_field() {
        let k = f(5, 2);
        let all: Vec<_> = k.elements().collect();
        assert_eq!(k.subfield_elements(2).unwrap(), all);
        assert_eq!(
            k.subfield_elements(3),
            Err(FieldError::NotADivisor { d: 3, degree: 2 })
        );
    }

    #[test]
    fn coefficient_round_trip_and_display() {
        let k = f(3, 2);
        let a = k.element(&[2, 1]).unwrap();
        assert_eq!(k.coeffs(a), [2, 1]);
        assert_eq!(alloc::format!("{a}"), "x + 2");
        assert!(matches!(k.element(&[1]), Err(FieldError::BadCoefficients { .. })));
    }

    #[test]
    fn primitive_element_generates() {
        let k = f(3, 4);
        let g = k.primitive_element();
        let mut x = k.one();
        let mut seen = alloc::collections::BTreeSet::new();
        for _ in 0..80 {
            seen.insert(x);
            x = k.mul(x, g);
        }
        assert_eq!(seen.len(), 80);
    }
}
