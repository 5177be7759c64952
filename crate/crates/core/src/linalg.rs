//! Dense Cholesky factorization for the small normal-equation systems of the
//! threshold scan (at most a dozen columns).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Relative pivot tolerance: a pivot below `RANK_TOL` times its column's
/// diagonal entry marks that column as linearly dependent on earlier ones.
pub const RANK_TOL: f64 = 1e-10;

/// Lower-triangular factor `L` with `A = L Lᵀ`, row-major `k × k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cholesky {
    k: usize,
    l: Vec<f64>,
}

impl Cholesky {
    /// Factor the symmetric matrix `a` (row-major, only the lower triangle
    /// is read).
    pub fn factor(a: &[f64], k: usize) -> Result<Self> {
        debug_assert_eq!(a.len(), k * k);
        let mut l = vec![0.0; k * k];
        for j in 0..k {
            let diag = a[j * k + j];
            let mut d = diag;
            for m in 0..j {
                d -= l[j * k + m] * l[j * k + m];
            }
            if !(diag > 0.0) || !(d > RANK_TOL * diag) {
                return Err(Error::RankDeficient { pivot: j, size: k });
            }
            let ljj = libm::sqrt(d);
            l[j * k + j] = ljj;
            for i in j + 1..k {
                let mut s = a[i * k + j];
                for m in 0..j {
                    s -= l[i * k + m] * l[j * k + m];
                }
                l[i * k + j] = s / ljj;
            }
        }
        Ok(Self { k, l })
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// Solve `L z = b` in place.
    pub fn forward(&self, b: &mut [f64]) {
        let k = self.k;
        for i in 0..k {
            let mut s = b[i];
            for m in 0..i {
                s -= self.l[i * k + m] * b[m];
            }
            b[i] = s / self.l[i * k + i];
        }
    }

    /// Solve `Lᵀ x = z` in place.
    pub fn backward(&self, z: &mut [f64]) {
        let k = self.k;
        for i in (0..k).rev() {
            let mut s = z[i];
            for m in i + 1..k {
                s -= self.l[m * k + i] * z[m];
            }
            z[i] = s / self.l[i * k + i];
        }
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.forward(&mut x);
        self.backward(&mut x);
        x
    }

    /// `bᵀ A⁻¹ b`, the explained sum of squares when `b = Xᵀy`.
    pub fn inv_quad_form(&self, b: &[f64], scratch: &mut [f64]) -> f64 {
        scratch[..self.k].copy_from_slice(&b[..self.k]);
        self.forward(&mut scratch[..self.k]);
        scratch[..self.k].iter().map(|z| z * z).sum()
    }
}
