//! Integer number theory and quadratic exponential sums.
//!
//! Residues are always canonicalised into `0..n` before use, so negative
//! inputs are accepted wherever a residue is expected.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::GcdOfZeros);
    }
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    Ok(x)
}

/// Reduces `value` into `0..modulus`.
pub fn canonical(value: i64, modulus: u64) -> u64 {
    debug_assert!(modulus > 0);
    (value as i128).rem_euclid(modulus as i128) as u64
}

/// Inverse of `b` modulo `n` by the extended Euclidean algorithm.
pub fn mod_inverse(b: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::DivisionByZero { modulus: 0 });
    }
    let b = canonical(b, n);
    if b == 0 {
        return Err(Error::DivisionByZero { modulus: n });
    }
    let (mut old_r, mut r) = (b as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NoInverse {
            value: b,
            modulus: n,
        });
    }
    Ok(old_s.rem_euclid(n as i128) as u64)
}

/// The residue `c` in `0..n` with `c * b ≡ a (mod n)`.
///
/// Fails when `b ≡ 0` or when `b` shares a factor with `n`, since then `c` is
/// not unique (or does not exist).
pub fn mod_div(a: i64, b: i64, n: u64) -> Result<u64> {
    let inv = mod_inverse(b, n)?;
    let a = canonical(a, n);
    Ok(((a as u128 * inv as u128) % n as u128) as u64)
}

/// Prime factorisation of an odd modulus `n > 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<u64>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Prime factors in non-decreasing order, with multiplicity.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn p_min(&self) -> u64 {
        self.factors[0]
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1
    }
}

/// Rejects anything other than an odd integer greater than two.
pub fn check_odd_modulus(n: u64) -> Result<()> {
    if n <= 2 || n.is_multiple_of(2) {
        return Err(Error::OddModulus(n));
    }
    Ok(())
}

pub fn factorize(n: u64) -> Result<Factorization> {
    check_odd_modulus(n)?;
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 3;
    while p * p <= rest {
        while rest.is_multiple_of(p) {
            factors.push(p);
            rest /= p;
        }
        p += 2;
    }
    if rest > 1 {
        factors.push(rest);
    }
    Ok(Factorization { n, factors })
}

/// `e^{2πi · numerator / n}` with the numerator reduced exactly first.
pub fn root_of_unity(numerator: i64, n: u64) -> Complex64 {
    let r = canonical(numerator, n);
    Complex64::from_polar(1.0, TAU * r as f64 / n as f64)
}

/// `Σ_{j=0}^{n-1} e^{(2πi/n)(b j² − 2 j t)}`.
///
/// Vanishes whenever `gcd(b, n)` does not divide `t`.
pub fn quad_exp_sum(b: i64, t: i64, n: u64) -> Result<Complex64> {
    check_odd_modulus(n)?;
    let b = canonical(b, n) as i128;
    let t = canonical(t, n) as i128;
    let m = n as i128;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let phase = (b * j * j - 2 * j * t).rem_euclid(m);
        acc += root_of_unity(phase as i64, n);
    }
    Ok(acc)
}

/// Both sides of `Σ_j e^{(2πi/n) c1 j²} = Σ_j e^{(2πi/n) c1 (j + c2)²}`.
pub fn shift_invariance_check(c1: i64, c2: i64, n: u64) -> Result<(Complex64, Complex64)> {
    if n == 0 {
        return Err(Error::Dimension(0));
    }
    let c1 = canonical(c1, n) as i128;
    let c2 = canonical(c2, n) as i128;
    let m = n as i128;
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut rhs = Complex64::new(0.0, 0.0);
    for j in 0..m {
        lhs += root_of_unity((c1 * j * j).rem_euclid(m) as i64, n);
        let s = j + c2;
        rhs += root_of_unity((c1 * s * s).rem_euclid(m) as i64, n);
    }
    Ok((lhs, rhs))
}
