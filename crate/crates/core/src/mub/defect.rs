use serde::{Deserialize, Serialize};

use crate::error::{ChmError, Result};
use crate::matrix::CMatrix;
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectReport {
    pub dim: usize,
    /// Index 0 is the identity; the diagonal is zero.
    pub pairwise: Vec<Vec<f64>>,
    pub max_defect: f64,
}

fn check_unitary(m: &CMatrix, tol: &Tolerances) -> Result<()> {
    if !m.is_square() {
        return Err(ChmError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let dev = m.unitarity_defect();
    if !(dev <= tol.eps_orth) {
        return Err(ChmError::NotUnitary(dev));
    }
    Ok(())
}

/// `max_{j,k} | |(U^dagger V)_{jk}|^2 - 1/d |` with no input checks.
pub fn raw_defect(u: &CMatrix, v: &CMatrix) -> f64 {
    let d = u.rows();
    let inv = 1.0 / d as f64;
    let mut worst = 0.0_f64;
    for j in 0..d {
        for k in 0..d {
            let mut s = crate::matrix::C64::new(0.0, 0.0);
            for r in 0..d {
                s += u[(r, j)].conj() * v[(r, k)];
            }
            worst = worst.max((s.norm_sqr() - inv).abs());
        }
    }
    worst
}

pub fn unbiasedness_defect(u: &CMatrix, v: &CMatrix, tol: &Tolerances) -> Result<f64> {
    check_unitary(u, tol)?;
    check_unitary(v, tol)?;
    if u.rows() != v.rows() {
        return Err(ChmError::DimensionMismatch {
            expected: u.rows(),
            found: v.rows(),
        });
    }
    Ok(raw_defect(u, v))
}

/// Pairwise defects of `{I} U bases`.
pub fn defect_report(bases: &[CMatrix], tol: &Tolerances) -> Result<DefectReport> {
    let d = bases.first().map_or(0, |b| b.rows());
    for b in bases {
        check_unitary(b, tol)?;
        if b.rows() != d {
            return Err(ChmError::DimensionMismatch {
                expected: d,
                found: b.rows(),
            });
        }
    }
    let mut all = Vec::with_capacity(bases.len() + 1);
    all.push(CMatrix::identity(d));
    all.extend(bases.iter().cloned());
    let n = all.len();
    let mut pairwise = vec![vec![0.0; n]; n];
    let mut max_defect = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            let v = raw_defect(&all[i], &all[j]);
            pairwise[i][j] = v;
            pairwise[j][i] = v;
            max_defect = max_defect.max(v);
        }
    }
    Ok(DefectReport {
        dim: d,
        pairwise,
        max_defect,
    })
}

pub fn is_mub_set(bases: &[CMatrix], tol: &Tolerances) -> Result<(bool, DefectReport)> {
    let rep = defect_report(bases, tol)?;
    Ok((rep.max_defect < tol.eps_match, rep))
}
