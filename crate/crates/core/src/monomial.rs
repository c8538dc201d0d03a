use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ChmError, Result};
use crate::matrix::{cis, CMatrix, C64};
use crate::tol::Tolerances;

/// A permutation composed with a diagonal of unimodular phases.
///
/// As a matrix, entry `(i, perm[i])` equals `phases[i]` and every other entry is
/// zero. Left multiplication therefore maps row `i` of the result to
/// `phases[i] * row perm[i]` of the operand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialUnitary {
    perm: Vec<usize>,
    phases: Vec<C64>,
}

impl MonomialUnitary {
    pub fn new(perm: Vec<usize>, phases: Vec<C64>, tol: &Tolerances) -> Result<Self> {
        let d = perm.len();
        if phases.len() != d {
            return Err(ChmError::DimensionMismatch {
                expected: d,
                found: phases.len(),
            });
        }
        let mut seen = vec![false; d];
        for &p in &perm {
            if p >= d || seen[p] {
                return Err(ChmError::InvalidConfig(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        for (i, z) in phases.iter().enumerate() {
            let dev = (z.norm() - 1.0).abs();
            if dev > tol.eps_entry {
                return Err(ChmError::NotUnimodular {
                    row: i,
                    col: perm[i],
                    deviation: dev,
                });
            }
        }
        Ok(Self { perm, phases })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            perm: (0..d).collect(),
            phases: vec![C64::new(1.0, 0.0); d],
        }
    }

    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let d = perm.len();
        Self::new(perm, vec![C64::new(1.0, 0.0); d], &Tolerances::default())
    }

    pub fn diagonal(phases: Vec<C64>, tol: &Tolerances) -> Result<Self> {
        Self::new((0..phases.len()).collect(), phases, tol)
    }

    /// Uniformly random permutation with uniformly random phases.
    pub fn random<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        let mut perm: Vec<usize> = (0..d).collect();
        for i in (1..d).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        let phases = (0..d)
            .map(|_| cis(rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        Self { perm, phases }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[C64] {
        &self.phases
    }

    pub fn to_matrix(&self) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for i in 0..d {
            m[(i, self.perm[i])] = self.phases[i];
        }
        m
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &MonomialUnitary) -> MonomialUnitary {
        // (P1 P2)[i, .] = phases1[i] * P2[perm1[i], .]
        let perm = self.perm.iter().map(|&k| other.perm[k]).collect();
        let phases = self
            .perm
            .iter()
            .zip(&self.phases)
            .map(|(&k, &p)| p * other.phases[k])
            .collect();
        MonomialUnitary { perm, phases }
    }

    pub fn inverse(&self) -> MonomialUnitary {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut phases = vec![C64::new(1.0, 0.0); d];
        for i in 0..d {
            perm[self.perm[i]] = i;
            phases[self.perm[i]] = self.phases[i].conj();
        }
        MonomialUnitary { perm, phases }
    }
}

/// A left/right monomial pair `(P, Q)` acting as `M -> P M Q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialPair {
    pub left: MonomialUnitary,
    pub right: MonomialUnitary,
}

impl MonomialPair {
    pub fn apply(&self, m: &CMatrix) -> Result<CMatrix> {
        apply_monomial(m, &self.left, &self.right)
    }
}

/// Computes `P M Q` by row permutation and scaling followed by column
/// permutation and scaling.
pub fn apply_monomial(m: &CMatrix, p: &MonomialUnitary, q: &MonomialUnitary) -> Result<CMatrix> {
    if p.dim() != m.rows() {
        return Err(ChmError::DimensionMismatch {
            expected: m.rows(),
            found: p.dim(),
        });
    }
    if q.dim() != m.cols() {
        return Err(ChmError::DimensionMismatch {
            expected: m.cols(),
            found: q.dim(),
        });
    }
    // (M Q)[r, c] = M[r, k] * q.phases[k] where q.perm[k] = c.
    let qinv = q.inverse();
    Ok(CMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let k = qinv.perm[c];
        p.phases[r] * m[(p.perm[r], k)] * q.phases[k]
    }))
}
