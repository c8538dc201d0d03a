//! Symmetric H2-reducible matrices.
//!
//! Symmetry of the parametrized matrix forces `z1 = z3`, `z2 = z4` and
//! `tan(theta) = e^{-i phi}`, so `phi` is 0 or pi and `theta` is `pi/4` or
//! `3 pi/4` respectively. `z1^2` must then be a fixed point of `M_A`.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::chm::{validate_chm, Chm};
use crate::error::{ChmError, Result};
use crate::families::karlsson::{
    ab_coefficients, assemble_h2, derive_h2, H2Derived, H2Params, Mobius, MobiusKind,
};
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhiSign {
    Zero,
    Pi,
}

impl PhiSign {
    pub fn phi(self) -> f64 {
        match self {
            PhiSign::Zero => 0.0,
            PhiSign::Pi => PI,
        }
    }

    /// `theta` with `tan(theta) = e^{-i phi}`.
    pub fn theta(self) -> f64 {
        match self {
            PhiSign::Zero => FRAC_PI_4,
            PhiSign::Pi => 3.0 * FRAC_PI_4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricParams {
    pub phi_sign: PhiSign,
    pub fixed_point: usize,
}

/// A constructed symmetric instance together with the parameters realizing it.
#[derive(Debug, Clone)]
pub struct SymmetricInstance {
    pub chm: Chm,
    pub params: H2Params,
    pub derived: H2Derived,
    pub symmetry_residual: f64,
    /// `|h(3,4) + 1|`, 0-indexed.
    pub minus_one_residual: f64,
}

/// Builds the instance for one `phi` and one of the two fixed points of `M_A`.
///
/// `z1` ranges over both square roots of the fixed point and the branch signs
/// over all eight combinations; the first combination (in that order) that
/// is symmetric and has `h(3,4) = -1` is returned.
pub fn symmetric_h2_instance(
    phi_sign: PhiSign,
    fixed_point_sel: usize,
    tol: &Tolerances,
) -> Result<SymmetricInstance> {
    if fixed_point_sel > 1 {
        return Err(ChmError::InvalidConfig(format!(
            "fixed point selector {fixed_point_sel} must be 0 or 1"
        )));
    }
    let (theta, phi) = (phi_sign.theta(), phi_sign.phi());
    let coeffs = ab_coefficients(theta, phi);
    let w = Mobius::new(MobiusKind::A, &coeffs).fixed_points()[fixed_point_sel];
    let off = (w.norm() - 1.0).abs();
    if off > tol.eps_match {
        return Err(ChmError::NoUnimodularFixedPoint(off));
    }
    let w = w / w.norm();
    let root = w.sqrt();

    let mut best_sym = f64::INFINITY;
    let mut best_minus = f64::INFINITY;
    for z1 in [root, -root] {
        for signs in H2Params::all_signs() {
            let params = H2Params::new(theta, phi, z1, signs);
            let Ok(derived) = derive_h2(&params, tol) else {
                continue;
            };
            let [z1, z2, z3, z4] = derived.z;
            if (z1 - z3).norm() > tol.eps_match || (z2 - z4).norm() > tol.eps_match {
                continue;
            }
            let m = assemble_h2(&derived);
            let sym = m.max_abs_diff(&m.transpose());
            best_sym = best_sym.min(sym);
            if sym >= tol.eps_orth {
                continue;
            }
            let minus = (m[(3, 4)] + 1.0).norm();
            best_minus = best_minus.min(minus);
            if minus >= tol.eps_match {
                continue;
            }
            let chm = validate_chm(m, tol)?;
            return Ok(SymmetricInstance {
                chm,
                params,
                derived,
                symmetry_residual: sym,
                minus_one_residual: minus,
            });
        }
    }
    if best_sym >= tol.eps_orth {
        Err(ChmError::SymmetryFailure(best_sym))
    } else {
        Err(ChmError::MissingMinusOne(best_minus))
    }
}

pub fn build_symmetric_h2(phi_sign: PhiSign, fixed_point_sel: usize, tol: &Tolerances) -> Result<Chm> {
    symmetric_h2_instance(phi_sign, fixed_point_sel, tol).map(|s| s.chm)
}

/// The four symmetric instances over `phi` in {0, pi} and both fixed points.
pub fn all_symmetric_params() -> [SymmetricParams; 4] {
    [
        SymmetricParams { phi_sign: PhiSign::Zero, fixed_point: 0 },
        SymmetricParams { phi_sign: PhiSign::Zero, fixed_point: 1 },
        SymmetricParams { phi_sign: PhiSign::Pi, fixed_point: 0 },
        SymmetricParams { phi_sign: PhiSign::Pi, fixed_point: 1 },
    ]
}

impl SymmetricParams {
    pub fn build(&self, tol: &Tolerances) -> Result<Chm> {
        build_symmetric_h2(self.phi_sign, self.fixed_point, tol)
    }
}
