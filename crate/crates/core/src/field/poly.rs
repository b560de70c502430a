//! Dense polynomials over a prime field, coefficients stored constant term first.
//!
//! Only what modulus selection needs: reduction, modular powers and gcd.

use alloc::vec;
use alloc::vec::Vec;

use crate::numtheory::prime_factors;

fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Remainder of `f` modulo `g` (`g` nonzero).
fn rem(mut f: Vec<u64>, g: &[u64], p: u64) -> Vec<u64> {
    trim(&mut f);
    let dg = g.len() - 1;
    let lead_inv = inv_mod(g[dg], p);
    while f.len() > dg {
        let top = f.len() - 1;
        let t = f[top] * lead_inv % p;
        if t != 0 {
            let shift = top - dg;
            for (i, &gi) in g.iter().enumerate() {
                f[shift + i] = (f[shift + i] + (p - t) * gi) % p;
            }
        }
        trim(&mut f);
    }
    f
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    rem(prod, f, p)
}

fn pow_mod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(vec![1], f, p);
    let mut b = rem(base.to_vec(), f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod f`.
fn frobenius_power_of_x(k: u32, f: &[u64], p: u64) -> Vec<u64> {
    let mut h = rem(vec![0, 1], f, p);
    for _ in 0..k {
        h = pow_mod(&h, p, f, p);
    }
    h
}

/// Rabin's test: a degree-`c` polynomial `f` over F_p is irreducible iff
/// `x^(p^c) = x (mod f)` and `gcd(x^(p^(c/r)) - x, f) = 1` for each prime `r | c`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let p = u64::from(p);
    let mut f: Vec<u64> = f.iter().map(|&a| u64::from(a) % p).collect();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let c = (f.len() - 1) as u32;
    if c == 1 {
        return true;
    }
    let x = rem(vec![0, 1], &f, p);
    if frobenius_power_of_x(c, &f, p) != x {
        return false;
    }
    for r in prime_factors(u64::from(c)) {
        let mut h = frobenius_power_of_x(c / r as u32, &f, p);
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        let g = gcd(f.clone(), h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The monic irreducible of degree `c` over F_p whose coefficient vector
/// `(a_0, a_1, ..., a_{c-1})` is lexicographically least.
pub fn canonical_modulus(p: u32, c: u32) -> Vec<u32> {
    let mut coeffs = vec![0u32; c as usize + 1];
    coeffs[c as usize] = 1;
    loop {
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        // Odometer with a_{c-1} as the fastest digit, so a_0 is most significant.
        let mut i = c as usize;
        loop {
            // An irreducible of every degree exists, so this never underflows.
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}
