//! Certified complex Hadamard matrices.

use serde::{Deserialize, Serialize};

use crate::error::{ChmError, Result};
use crate::matrix::{CMatrix, C64};
use crate::monomial::{apply_monomial, MonomialPair, MonomialUnitary};
use crate::tol::Tolerances;

/// Worst deviations observed when a matrix was certified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub unimodular_dev: f64,
    pub orthogonal_dev: f64,
}

/// A square matrix with unimodular entries and `H H† = d I`, within the
/// tolerances it was validated against.
#[derive(Debug, Clone, PartialEq)]
pub struct Chm {
    matrix: CMatrix,
    certificate: Certificate,
}

impl Chm {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.matrix[(r, c)]
    }

    /// `P H Q`, re-certified.
    pub fn transform(&self, pair: &MonomialPair, tol: &Tolerances) -> Result<Chm> {
        validate_chm(pair.apply(&self.matrix)?, tol)
    }
}

/// Certifies `m` as a complex Hadamard matrix.
pub fn validate_chm(m: CMatrix, tol: &Tolerances) -> Result<Chm> {
    if !m.is_square() {
        return Err(ChmError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let d = m.rows();

    let mut unimodular_dev = 0.0_f64;
    for r in 0..d {
        for c in 0..d {
            let z = m[(r, c)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(ChmError::NonFinite { row: r, col: c });
            }
            let dev = (z.norm() - 1.0).abs();
            if dev > tol.eps_entry {
                return Err(ChmError::NotUnimodular {
                    row: r,
                    col: c,
                    deviation: dev,
                });
            }
            unimodular_dev = unimodular_dev.max(dev);
        }
    }

    // Gram matrix H H†: diagonal should be d, off-diagonal zero.
    let mut orthogonal_dev = 0.0_f64;
    let mut worst = (0, 0, 0.0_f64);
    for i in 0..d {
        for j in i..d {
            let g: C64 = m
                .row(i)
                .iter()
                .zip(m.row(j))
                .map(|(a, b)| a * b.conj())
                .sum();
            let target = if i == j { d as f64 } else { 0.0 };
            let dev = (g - target).norm();
            if dev > worst.2 {
                worst = (i, j, dev);
            }
            orthogonal_dev = orthogonal_dev.max(dev);
        }
    }
    if orthogonal_dev > tol.eps_orth {
        return Err(ChmError::NotOrthogonal {
            rows: (worst.0, worst.1),
            deviation: worst.2,
        });
    }

    Ok(Chm {
        matrix: m,
        certificate: Certificate {
            unimodular_dev,
            orthogonal_dev,
        },
    })
}

/// Normalizes `h` so its first row and column are all ones.
///
/// Entry `(i, j)` maps to `h_ij h_00 / (h_0j h_i0)`. The returned pair `(P, Q)`
/// satisfies `P h Q = dephased`.
pub fn dephase(h: &Chm, tol: &Tolerances) -> Result<(Chm, MonomialPair)> {
    let m = h.matrix();
    let d = h.dim();
    let h00 = m[(0, 0)];
    let left = MonomialUnitary::diagonal((0..d).map(|i| m[(i, 0)].inv()).collect(), tol)?;
    let right = MonomialUnitary::diagonal((0..d).map(|j| h00 / m[(0, j)]).collect(), tol)?;
    let mut out = apply_monomial(m, &left, &right)?;
    // Pin the border to exact ones; the products above already agree to rounding.
    for k in 0..d {
        out[(0, k)] = C64::new(1.0, 0.0);
        out[(k, 0)] = C64::new(1.0, 0.0);
    }
    let chm = validate_chm(out, tol)?;
    Ok((chm, MonomialPair { left, right }))
}

/// Entries within `eps` of one.
pub fn count_ones(m: &CMatrix, eps: f64) -> usize {
    m.iter().filter(|z| (*z - 1.0).norm() <= eps).count()
}
