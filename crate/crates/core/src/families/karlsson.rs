//! The H2-reducible parametrization.
//!
//! Every H2-reducible 6x6 CHM is complex equivalent to
//!
//! ```text
//!     [ F2   Z1            Z2          ]
//! H = [ Z3   1/2 Z3 A Z1   1/2 Z3 B Z2 ]
//!     [ Z4   1/2 Z4 B Z1   1/2 Z4 A Z2 ]
//! ```
//!
//! with `F2 = [[1,1],[1,-1]]`, `Zk = [[1,1],[zk,-zk]]` for k = 1, 2,
//! `Zk = [[1,zk],[1,-zk]]` for k = 3, 4, and 2x2 blocks `A`, `B` determined by two
//! angles. The unimodular `z1..z4` are tied together by the Mobius constraints
//! `z3^2 = M_A(z1^2) = M_B(z2^2)` and `z4^2 = M_A(z2^2) = M_B(z1^2)`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::chm::{validate_chm, Chm};
use crate::error::{ChmError, Result};
use crate::matrix::{branch_sqrt, cis, CMatrix, C64, I};
use crate::tol::Tolerances;

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// The 2x2 blocks `A`, `B` and their defining coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ABCoeffs {
    pub theta: f64,
    pub phi: f64,
    pub a11: C64,
    pub a12: C64,
    pub b11: C64,
    pub b12: C64,
    pub a: CMatrix,
    pub b: CMatrix,
}

pub fn ab_coefficients(theta: f64, phi: f64) -> ABCoeffs {
    let (s, c) = theta.sin_cos();
    let a11 = C64::new(-0.5, 0.0) + I * SQRT3_2 * (c + cis(-phi) * s);
    let a12 = C64::new(-0.5, 0.0) + I * SQRT3_2 * (-c + cis(phi) * s);
    let one = C64::new(1.0, 0.0);
    let b11 = -one - a11;
    let b12 = -one - a12;
    let a = CMatrix::from_rows(vec![vec![a11, a12], vec![a12.conj(), -a11.conj()]])
        .expect("finite 2x2");
    let b = CMatrix::from_rows(vec![
        vec![b11, b12],
        vec![-one - a12.conj(), one + a11.conj()],
    ])
    .expect("finite 2x2");
    ABCoeffs {
        theta,
        phi,
        a11,
        a12,
        b11,
        b12,
        a,
        b,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MobiusKind {
    A,
    B,
}

/// `w = (p z + q) / (r z + s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    p: C64,
    q: C64,
    r: C64,
    s: C64,
}

impl Mobius {
    /// `M(z) = (x12^2 z - x11^2) / ((x11^2)* z - (x12^2)*)`.
    pub fn new(kind: MobiusKind, coeffs: &ABCoeffs) -> Self {
        let (x11, x12) = match kind {
            MobiusKind::A => (coeffs.a11, coeffs.a12),
            MobiusKind::B => (coeffs.b11, coeffs.b12),
        };
        let sq11 = x11 * x11;
        let sq12 = x12 * x12;
        Self {
            p: sq12,
            q: -sq11,
            r: sq11.conj(),
            s: -sq12.conj(),
        }
    }

    /// Algebraic inverse: `z = (s w - q) / (-r w + p)`.
    pub fn inverse(&self) -> Self {
        Self {
            p: self.s,
            q: -self.q,
            r: -self.r,
            s: self.p,
        }
    }

    pub fn apply(&self, z: C64, tol: &Tolerances) -> Result<C64> {
        let den = self.r * z + self.s;
        if den.norm() < tol.eps_match {
            return Err(ChmError::DegenerateMobius(den.norm()));
        }
        Ok((self.p * z + self.q) / den)
    }

    /// Solutions of `M(w) = w`, sorted by argument then real part.
    pub fn fixed_points(&self) -> [C64; 2] {
        // r w^2 + (s - p) w - q = 0
        let (a, b, c) = (self.r, self.s - self.p, -self.q);
        let disc = (b * b - 4.0 * a * c).sqrt();
        // Pick the numerically stable combination for the first root.
        let qq = if (b.conj() * disc).re >= 0.0 {
            -0.5 * (b + disc)
        } else {
            -0.5 * (b - disc)
        };
        let mut roots = [qq / a, c / qq];
        sort_by_arg(&mut roots);
        roots
    }
}

pub(crate) fn sort_by_arg(v: &mut [C64]) {
    v.sort_by(|x, y| x.arg().total_cmp(&y.arg()).then(x.re.total_cmp(&y.re)));
}

fn check_unimodular(z: C64, tol: &Tolerances) -> Result<()> {
    let dev = (z.norm() - 1.0).abs();
    if !(dev <= tol.eps_entry) {
        return Err(ChmError::NotUnimodular {
            row: 0,
            col: 0,
            deviation: dev,
        });
    }
    Ok(())
}

pub fn mobius_apply(kind: MobiusKind, coeffs: &ABCoeffs, z: C64, tol: &Tolerances) -> Result<C64> {
    check_unimodular(z, tol)?;
    Mobius::new(kind, coeffs).apply(z, tol)
}

pub fn mobius_inverse_apply(
    kind: MobiusKind,
    coeffs: &ABCoeffs,
    w: C64,
    tol: &Tolerances,
) -> Result<C64> {
    check_unimodular(w, tol)?;
    Mobius::new(kind, coeffs).inverse().apply(w, tol)
}

/// Free parameters of an H2-reducible matrix. `z2`, `z3`, `z4` are derived from
/// these through the Mobius constraints, with `s2`, `s3`, `s4` choosing the
/// square-root branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct H2Params {
    pub theta: f64,
    pub phi: f64,
    pub z1: C64,
    pub s2: i8,
    pub s3: i8,
    pub s4: i8,
}

impl H2Params {
    /// Angles are reduced into `[0, 2 pi)`.
    pub fn new(theta: f64, phi: f64, z1: C64, signs: [i8; 3]) -> Self {
        Self {
            theta: theta.rem_euclid(TAU),
            phi: phi.rem_euclid(TAU),
            z1,
            s2: signs[0],
            s3: signs[1],
            s4: signs[2],
        }
    }

    pub fn from_arg(theta: f64, phi: f64, z1_arg: f64) -> Self {
        Self::new(theta, phi, cis(z1_arg), [1, 1, 1])
    }

    pub fn signs(&self) -> [i8; 3] {
        [self.s2, self.s3, self.s4]
    }

    /// All eight branch-sign combinations in a fixed order.
    pub fn all_signs() -> [[i8; 3]; 8] {
        let mut out = [[1; 3]; 8];
        for (k, s) in out.iter_mut().enumerate() {
            for (bit, v) in s.iter_mut().enumerate() {
                *v = if k >> (2 - bit) & 1 == 1 { -1 } else { 1 };
            }
        }
        out
    }
}

/// Parameters with all four `z` values resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct H2Derived {
    pub coeffs: ABCoeffs,
    pub z: [C64; 4],
    /// `|M_A(z2^2) - z4^2|`.
    pub consistency: f64,
}

pub fn derive_h2(params: &H2Params, tol: &Tolerances) -> Result<H2Derived> {
    check_unimodular(params.z1, tol)?;
    let coeffs = ab_coefficients(params.theta, params.phi);
    let ma = Mobius::new(MobiusKind::A, &coeffs);
    let mb = Mobius::new(MobiusKind::B, &coeffs);
    let z1 = params.z1;
    let w1 = z1 * z1;
    let w3 = ma.apply(w1, tol)?;
    let w2 = mb.inverse().apply(w3, tol)?;
    let w4 = mb.apply(w1, tol)?;
    let consistency = (ma.apply(w2, tol)? - w4).norm();
    if !(consistency < tol.eps_match) {
        return Err(ChmError::ConsistencyFailure(consistency));
    }
    let z2 = branch_sqrt(w2, params.s2);
    let z3 = branch_sqrt(w3, params.s3);
    let z4 = branch_sqrt(w4, params.s4);
    Ok(H2Derived {
        coeffs,
        z: [z1, z2, z3, z4],
        consistency,
    })
}

fn z_col_block(z: C64) -> CMatrix {
    let one = C64::new(1.0, 0.0);
    CMatrix::from_rows(vec![vec![one, one], vec![z, -z]]).expect("finite")
}

fn z_row_block(z: C64) -> CMatrix {
    let one = C64::new(1.0, 0.0);
    CMatrix::from_rows(vec![vec![one, z], vec![one, -z]]).expect("finite")
}

pub fn f2() -> CMatrix {
    let one = C64::new(1.0, 0.0);
    CMatrix::from_rows(vec![vec![one, one], vec![one, -one]]).expect("finite")
}

/// Assembles the 6x6 matrix without certifying it.
pub fn assemble_h2(derived: &H2Derived) -> CMatrix {
    let [z1, z2, z3, z4] = derived.z;
    let (zc1, zc2) = (z_col_block(z1), z_col_block(z2));
    let (zr3, zr4) = (z_row_block(z3), z_row_block(z4));
    let a = derived.coeffs.a.scale_real(0.5);
    let b = derived.coeffs.b.scale_real(0.5);
    let inner = |left: &CMatrix, mid: &CMatrix, right: &CMatrix| left * mid * right;
    CMatrix::from_blocks(&[
        vec![f2(), zc1.clone(), zc2.clone()],
        vec![zr3.clone(), inner(&zr3, &a, &zc1), inner(&zr3, &b, &zc2)],
        vec![zr4.clone(), inner(&zr4, &b, &zc1), inner(&zr4, &a, &zc2)],
    ])
}

pub fn build_h2(params: &H2Params, tol: &Tolerances) -> Result<Chm> {
    let derived = derive_h2(params, tol)?;
    validate_chm(assemble_h2(&derived), tol)
}
