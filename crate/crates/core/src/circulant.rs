//! Circulant ("shift") matrices over complex amplitudes.
//!
//! A circulant is stored by its first row `(a_0 … a_{n-1})`; entry `(i, j)` of
//! the full matrix is `a_{(j - i) mod n}`, so each row is the previous one
//! rotated one place to the right.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::modular::{check_odd_modulus, gcd, root_of_unity};
use crate::{Error, Result};

/// Relative threshold below which an entry counts as zero during
/// classification.
pub const ZERO_TOL: f64 = 1e-9;
/// Budget for the summed phase error when validating a fitted phase law.
pub const PHASE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ShiftMatrixJson", into = "ShiftMatrixJson")]
pub struct ShiftMatrix {
    first_row: Vec<Complex64>,
}

impl ShiftMatrix {
    pub fn new(first_row: Vec<Complex64>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::Dimension(0));
        }
        Ok(ShiftMatrix { first_row })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut row = vec![Complex64::new(0.0, 0.0); n];
        *row.first_mut().ok_or(Error::Dimension(0))? = Complex64::new(1.0, 0.0);
        Ok(ShiftMatrix { first_row: row })
    }

    /// The Gauss-phase circulant `M_n` with `m_j = e^{(2πi/n) j²} / √n`.
    pub fn gauss(n: u64) -> Result<Self> {
        check_odd_modulus(n)?;
        let scale = 1.0 / (n as f64).sqrt();
        let first_row = (0..n)
            .map(|j| root_of_unity(((j * j) % n) as i64, n) * scale)
            .collect();
        Ok(ShiftMatrix { first_row })
    }

    /// The cyclic shift `F = (0 1 0 … 0)`.
    pub fn cyclic_shift(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension(n));
        }
        let mut row = vec![Complex64::new(0.0, 0.0); n];
        row[1] = Complex64::new(1.0, 0.0);
        Ok(ShiftMatrix { first_row: row })
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[Complex64] {
        &self.first_row
    }

    /// Entry `(i, j)` of the full matrix.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        let n = self.n();
        self.first_row[(j + n - i % n) % n]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.n();
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self.entry(i, j);
            }
        }
        out
    }

    /// Product of two circulants: the cyclic convolution
    /// `c_i = Σ_j a_j · b_{(i - j) mod n}`.
    pub fn mul(&self, rhs: &ShiftMatrix) -> Result<ShiftMatrix> {
        let n = self.n();
        if rhs.n() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: rhs.n(),
            });
        }
        let first_row = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.first_row[j] * rhs.first_row[(i + n - j) % n])
                    .sum()
            })
            .collect();
        Ok(ShiftMatrix { first_row })
    }

    /// Conjugate transpose; first row `(ā_0, ā_{n-1}, …, ā_1)`.
    pub fn conj_transpose(&self) -> ShiftMatrix {
        let n = self.n();
        let first_row = (0..n).map(|j| self.first_row[(n - j) % n].conj()).collect();
        ShiftMatrix { first_row }
    }

    pub fn pow(&self, s: u64) -> ShiftMatrix {
        let mut acc = ShiftMatrix::identity(self.n()).expect("non-empty");
        for _ in 0..s {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// `A, A², A³, …` by iterated multiplication.
    pub fn powers(&self) -> Powers<'_> {
        Powers {
            base: self,
            current: None,
        }
    }

    /// `max |(A·A′ − I)_{ij}| ≤ tol`.
    ///
    /// Circulants are normal, so `A·A′ = A′·A` and checking one side is enough;
    /// every row of the product is a rotation of the first.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let gram = self.mul(&self.conj_transpose()).expect("same dimension");
        gram.first_row
            .iter()
            .enumerate()
            .map(|(j, z)| {
                let target = if j == 0 { 1.0 } else { 0.0 };
                (z - target).norm()
            })
            .fold(0.0, f64::max)
            <= tol
    }

    /// `Σ_j |a_j|²`, the squared norm of any row.
    pub fn row_norm_sqr(&self) -> f64 {
        self.first_row.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &ShiftMatrix) -> f64 {
        assert_eq!(self.n(), other.n());
        self.first_row
            .iter()
            .zip(&other.first_row)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Recognises a sparse quadratic-phase circulant
    /// `a_{j·l} = c · e^{(2πi/n) k l j²}` (zero off the multiples of `l`).
    ///
    /// `tol` is the relative zero threshold: entries with
    /// `|a_i| ≤ tol · max |a|` are treated as zero. The lattice step `l` is
    /// the gcd of `n` with every surviving index, `k` is read off the phase of
    /// `a_l / a_0` and then checked against all `g = n / l` lattice entries.
    /// Returns `None` when no profile reproduces the row, including whenever
    /// `a_0` vanishes.
    pub fn classify_special(&self, tol: f64) -> Option<SpecialShiftProfile> {
        let n = self.n();
        let max = self.first_row.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return None;
        }
        let threshold = tol * max;
        let c = self.first_row[0];
        if c.norm() <= threshold {
            return None;
        }

        let mut l = n as u64;
        for (i, z) in self.first_row.iter().enumerate().skip(1) {
            if z.norm() > threshold {
                l = gcd(l, i as u64).expect("n > 0");
            }
        }
        let g = n as u64 / l;
        let k = if g == 1 {
            0
        } else {
            let ratio = self.first_row[l as usize] / c;
            let turns = ratio.arg() / TAU * n as f64;
            let kl = (turns.round() as i64).rem_euclid(n as i64) as u64;
            if !kl.is_multiple_of(l) {
                return None;
            }
            (kl / l) % g
        };

        let profile = SpecialShiftProfile {
            n: n as u64,
            l,
            g,
            k,
            c,
        };
        let mut phase_error = 0.0;
        for j in 0..g {
            let actual = self.first_row[(j * l) as usize];
            let predicted = profile.lattice_entry(j);
            if (actual.norm() - c.norm()).abs() > PHASE_TOL * max {
                return None;
            }
            phase_error += (actual / predicted).arg().abs();
        }
        (phase_error <= PHASE_TOL).then_some(profile)
    }
}

pub struct Powers<'a> {
    base: &'a ShiftMatrix,
    current: Option<ShiftMatrix>,
}

impl Iterator for Powers<'_> {
    type Item = ShiftMatrix;

    fn next(&mut self) -> Option<ShiftMatrix> {
        let next = match &self.current {
            None => self.base.clone(),
            Some(cur) => cur.mul(self.base).expect("same dimension"),
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

/// Parameters of a special shift matrix: non-zero entries sit at multiples of
/// `l` and follow `a_{j·l} = c · e^{(2πi/n) k l j²}` for `j` in `0..g`.
///
/// `k` is only meaningful modulo `g = n / l` and is reported in `0..g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialShiftProfile {
    pub n: u64,
    pub l: u64,
    pub g: u64,
    pub k: u64,
    #[serde(serialize_with = "serialize_complex")]
    pub c: Complex64,
}

impl SpecialShiftProfile {
    /// `a_{j·l}`.
    pub fn lattice_entry(&self, j: u64) -> Complex64 {
        let phase = (self.k as u128 * self.l as u128 * (j as u128 * j as u128)) % self.n as u128;
        self.c * root_of_unity(phase as i64, self.n)
    }

    pub fn to_shift_matrix(&self) -> ShiftMatrix {
        let mut row = vec![Complex64::new(0.0, 0.0); self.n as usize];
        for j in 0..self.g {
            row[(j * self.l) as usize] = self.lattice_entry(j);
        }
        ShiftMatrix { first_row: row }
    }
}

fn serialize_complex<S: serde::Serializer>(
    z: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[derive(Serialize, Deserialize)]
struct ShiftMatrixJson {
    n: usize,
    first_row: Vec<[f64; 2]>,
}

impl From<ShiftMatrix> for ShiftMatrixJson {
    fn from(m: ShiftMatrix) -> Self {
        ShiftMatrixJson {
            n: m.n(),
            first_row: m.first_row.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<ShiftMatrixJson> for ShiftMatrix {
    type Error = Error;

    fn try_from(j: ShiftMatrixJson) -> Result<Self> {
        if j.first_row.len() != j.n {
            return Err(Error::DimensionMismatch {
                left: j.n,
                right: j.first_row.len(),
            });
        }
        ShiftMatrix::new(
            j.first_row
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}
