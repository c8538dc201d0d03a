//! The one-parameter Hermitian CHM family `H(theta)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::chm::{validate_chm, Chm};
use crate::error::{ChmError, Result};
use crate::matrix::{branch_sqrt, cis, CMatrix, C64, I};
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermitianParams {
    pub theta: f64,
    /// Sign applied to `sqrt(2) sqrt(1 + 2y + 2y^3 + y^4)`.
    pub sqrt_branch: i8,
}

impl HermitianParams {
    pub fn new(theta: f64, sqrt_branch: i8) -> Self {
        Self { theta, sqrt_branch }
    }
}

/// `arccos((sqrt 3 - 1) / 2)`, the inner edge of the admissible theta range.
pub fn hermitian_theta_min() -> f64 {
    ((3.0_f64.sqrt() - 1.0) / 2.0).acos()
}

/// `theta` in `[-pi, -t0] U [t0, pi]` with `t0 = arccos((sqrt 3 - 1)/2)`.
pub fn hermitian_theta_allowed(theta: f64) -> bool {
    let slack = 1e-12;
    let a = theta.abs();
    a >= hermitian_theta_min() - slack && a <= PI + slack
}

/// The scalars `(x, y, z, t)` for a given theta and branch.
pub fn hermitian_scalars(theta: f64, branch: i8) -> [C64; 4] {
    let y = cis(theta);
    let y2 = y * y;
    let one = C64::new(1.0, 0.0);
    // 1 + 2y + 2y^3 + y^4 = y^2 (2cos + 1 + sqrt 3)(2cos + 1 - sqrt 3); the real
    // product keeps the root accurate near its zero at the range edge
    let s3 = 3.0_f64.sqrt();
    let c2 = 2.0 * theta.cos() + 1.0;
    let real = (c2 + s3) * (c2 - s3);
    let root = I * y * C64::new(-real, 0.0).sqrt();
    let reference = branch_sqrt(one + 2.0 * y + 2.0 * y2 * y + y2 * y2, branch);
    let root = if (root - reference).norm() <= (root + reference).norm() { root } else { -root };
    let s = 2.0_f64.sqrt() * root;
    let top = one + 2.0 * y + y2 - s;
    let x = top / (one + 2.0 * y - y2);
    let t = top / (-one + 2.0 * y + y2);
    let z = (one + 2.0 * y - y2) / (y * (-one + 2.0 * y + y2));
    [x, y, z, t]
}

pub fn hermitian_matrix(theta: f64, branch: i8) -> CMatrix {
    let [x, y, z, t] = hermitian_scalars(theta, branch);
    let one = C64::new(1.0, 0.0);
    let rows = vec![
        vec![one; 6],
        vec![one, -one, x.inv(), -y, -x.inv(), y],
        vec![one, x, -one, t, -t, -x],
        vec![one, -y.inv(), t.inv(), -one, y.inv(), -t.inv()],
        vec![one, -x, -t.inv(), y, one, z.inv()],
        vec![one, y.inv(), -x.inv(), -t, z, one],
    ];
    CMatrix::from_rows(rows).unwrap_or_else(|_| CMatrix::from_fn(6, 6, |_, _| C64::new(f64::NAN, 0.0)))
}

fn try_branch(theta: f64, branch: i8, tol: &Tolerances) -> Result<Chm> {
    let m = hermitian_matrix(theta, branch);
    if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(ChmError::NonFinite { row: 0, col: 0 });
    }
    let chm = validate_chm(m, tol)?;
    let herm = chm.matrix().max_abs_diff(&chm.matrix().adjoint());
    if herm >= tol.eps_orth {
        return Err(ChmError::SymmetryFailure(herm));
    }
    Ok(chm)
}

pub fn build_hermitian(params: &HermitianParams, tol: &Tolerances) -> Result<Chm> {
    if !hermitian_theta_allowed(params.theta) {
        return Err(ChmError::DomainViolation(format!(
            "theta = {} outside [-pi, -{t0:.6}] U [{t0:.6}, pi]",
            params.theta,
            t0 = hermitian_theta_min()
        )));
    }
    let requested = if params.sqrt_branch < 0 { -1 } else { 1 };
    match try_branch(params.theta, requested, tol) {
        Ok(h) => Ok(h),
        Err(_) => {
            let other = -requested;
            let working = try_branch(params.theta, other, tol).ok().map(|_| other);
            Err(ChmError::BranchFailure {
                requested,
                working,
            })
        }
    }
}
