//! Discrete-log representation with a Zech logarithm table.
//!
//! A nonzero element `g^e` is stored as `e`; zero is the sentinel `u32::MAX`.
//! Multiplication and Frobenius are integer arithmetic modulo `q - 1`;
//! addition uses `g^a + g^b = g^(a + Z(b - a))` where `1 + g^k = g^Z(k)`.

use alloc::vec;
use alloc::vec::Vec;

use super::{ExtensionField, FieldError, FieldOps};

/// Largest field order for which the log tables are built.
pub const ZECH_LIMIT: u64 = 1 << 22;

const ZERO: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct ZechField {
    p: u32,
    degree: u32,
    /// Multiplicative group order `q - 1`.
    n: u32,
    /// `exp[e]` = packed value of `g^e`.
    exp: Vec<u32>,
    /// `log[v]` = exponent of the element with packed value `v`.
    log: Vec<u32>,
    /// `zech[k]` = log of `1 + g^k`.
    zech: Vec<u32>,
}

impl ZechField {
    pub fn new(field: &ExtensionField) -> Result<Self, FieldError> {
        let q = field.order();
        if q > ZECH_LIMIT {
            return Err(FieldError::TooLarge {
                p: u64::from(field.characteristic()),
                degree: field.degree(),
            });
        }
        let n = (q - 1) as u32;
        let g = field.primitive_element().packed();
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![ZERO; q as usize];
        let mut x = 1u64;
        for e in 0..n {
            exp[e as usize] = x as u32;
            log[x as usize] = e;
            x = field.raw_mul(x, g);
        }
        let zech = (0..n)
            .map(|k| log[field.raw_add(u64::from(exp[k as usize]), 1) as usize])
            .collect();
        Ok(ZechField {
            p: field.characteristic(),
            degree: field.degree(),
            n,
            exp,
            log,
            zech,
        })
    }

    /// Exponent of the subfield of order `p^d` inside the cyclic group:
    /// its nonzero elements are exactly the powers of `g^step`.
    pub fn subfield_step(&self, d: u32) -> Result<u32, FieldError> {
        if d == 0 || self.degree % d != 0 {
            return Err(FieldError::NotADivisor {
                d,
                degree: self.degree,
            });
        }
        let sub = u64::from(self.p).pow(d) - 1;
        Ok((u64::from(self.n) / sub) as u32)
    }

    /// Elements of the subfield of order `p^d`: zero, then `g^(k * step)`.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<u32>, FieldError> {
        let step = self.subfield_step(d)?;
        let mut out = Vec::with_capacity((self.n / step + 1) as usize);
        out.push(ZERO);
        out.extend((0..self.n).step_by(step as usize));
        Ok(out)
    }

    #[inline(always)]
    fn reduce(&self, e: u32) -> u32 {
        if e >= self.n {
            e - self.n
        } else {
            e
        }
    }
}

impl FieldOps for ZechField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn degree(&self) -> u32 {
        self.degree
    }

    fn order(&self) -> u64 {
        u64::from(self.n) + 1
    }

    #[inline(always)]
    fn zero(&self) -> u32 {
        ZERO
    }

    #[inline(always)]
    fn one(&self) -> u32 {
        0
    }

    #[inline(always)]
    fn is_zero(&self, a: u32) -> bool {
        a == ZERO
    }

    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        if a == ZERO {
            return b;
        }
        if b == ZERO {
            return a;
        }
        let d = if b >= a { b - a } else { b + self.n - a };
        let z = self.zech[d as usize];
        if z == ZERO {
            ZERO
        } else {
            self.reduce(a + z)
        }
    }

    #[inline(always)]
    fn neg(&self, a: u32) -> u32 {
        if a == ZERO {
            ZERO
        } else {
            // -1 = g^(n/2) for odd p.
            self.reduce(a + self.n / 2)
        }
    }

    #[inline(always)]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == ZERO || b == ZERO {
            ZERO
        } else {
            self.reduce(a + b)
        }
    }

    fn inv(&self, a: u32) -> Option<u32> {
        match a {
            ZERO => None,
            0 => Some(0),
            e => Some(self.n - e),
        }
    }

    #[inline(always)]
    fn frobenius(&self, a: u32) -> u32 {
        if a == ZERO {
            ZERO
        } else {
            ((u64::from(a) * u64::from(self.p)) % u64::from(self.n)) as u32
        }
    }

    fn pow(&self, a: u32, exp: u64) -> u32 {
        if exp == 0 {
            return 0;
        }
        if a == ZERO {
            return ZERO;
        }
        ((u64::from(a) * (exp % u64::from(self.n))) % u64::from(self.n)) as u32
    }

    fn from_packed(&self, v: u64) -> u32 {
        self.log[v as usize]
    }

    fn to_packed(&self, a: u32) -> u64 {
        if a == ZERO {
            0
        } else {
            u64::from(self.exp[a as usize])
        }
    }

    fn subfield(&self, d: u32) -> Result<Vec<u32>, FieldError> {
        self.subfield_elements(d)
    }
}
