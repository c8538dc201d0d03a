//! The Szollosi family `X(a, b)` built from the roots of
//! `f_alpha(z) = z^3 - alpha z^2 + alpha* z - 1`.

use serde::{Deserialize, Serialize};

use crate::chm::{validate_chm, Chm};
use crate::error::{ChmError, Result};
use crate::families::karlsson::sort_by_arg;
use crate::matrix::{CMatrix, C64};
use crate::tol::Tolerances;

/// `D(alpha) = |alpha|^4 + 18 |alpha|^2 - 8 Re(alpha^3) - 27`.
///
/// The roots of `f_alpha` are all unimodular exactly when `D(alpha) <= 0`.
pub fn discriminant_d(alpha: C64) -> f64 {
    let n = alpha.norm_sqr();
    n * n + 18.0 * n - 8.0 * (alpha * alpha * alpha).re - 27.0
}

fn f_alpha(alpha: C64, z: C64) -> C64 {
    ((z - alpha) * z + alpha.conj()) * z - 1.0
}

fn df_alpha(alpha: C64, z: C64) -> C64 {
    (3.0 * z - 2.0 * alpha) * z + alpha.conj()
}

/// The three roots of `f_alpha`, sorted by argument (ties by real part).
///
/// Closed-form solve of the depressed cubic followed by one guarded Newton
/// step per root.
pub fn cubic_roots(alpha: C64) -> [C64; 3] {
    // z^3 + a z^2 + b z + c
    let a = -alpha;
    let b = alpha.conj();
    let c = C64::new(-1.0, 0.0);
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    let s = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let (u1, u2) = (-q / 2.0 + s, -q / 2.0 - s);
    let u3 = if u1.norm() >= u2.norm() { u1 } else { u2 };
    let omega = C64::from_polar(1.0, std::f64::consts::TAU / 3.0);

    let mut roots = [C64::new(0.0, 0.0); 3];
    if u3.norm() == 0.0 {
        // p = q = 0: triple root at the shift point
        roots = [-shift; 3];
    } else {
        let u = u3.powf(1.0 / 3.0);
        let mut uk = u;
        for r in roots.iter_mut() {
            *r = uk - p / (3.0 * uk) - shift;
            uk *= omega;
        }
    }

    for r in roots.iter_mut() {
        let fr = f_alpha(alpha, *r);
        let dfr = df_alpha(alpha, *r);
        if dfr.norm() > 1e-300 {
            let cand = *r - fr / dfr;
            if f_alpha(alpha, cand).norm() <= fr.norm() {
                *r = cand;
            }
        }
    }
    sort_by_arg(&mut roots);
    roots
}

/// `alpha` plus indices into the sorted roots of `f_alpha` (for `x`, `y`) and
/// of `f_{-alpha}` (for `u`, `v`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SzollosiParams {
    pub alpha: C64,
    pub sel_x: usize,
    pub sel_y: usize,
    pub sel_u: usize,
    pub sel_v: usize,
}

impl SzollosiParams {
    pub fn new(alpha: C64, sel: [usize; 4]) -> Self {
        Self {
            alpha,
            sel_x: sel[0],
            sel_y: sel[1],
            sel_u: sel[2],
            sel_v: sel[3],
        }
    }
}

pub fn in_domain(alpha: C64, tol: &Tolerances) -> bool {
    discriminant_d(alpha) <= tol.eps_match && discriminant_d(-alpha) <= tol.eps_match
}

/// Assembles `H(x, y, u, v)`.
pub fn szollosi_matrix(x: C64, y: C64, u: C64, v: C64) -> CMatrix {
    let one = C64::new(1.0, 0.0);
    let xy = x * y;
    let rows = vec![
        vec![one; 6],
        vec![one, x * x * y, x * y * y, xy / (u * v), u * xy, v * xy],
        vec![one, x / y, x * x * y, x / u, x / v, u * v * x],
        vec![one, u * v * x, u * xy, -one, -u * xy, -u * v * x],
        vec![one, x / u, v * xy, -x / u, -one, -v * xy],
        vec![one, x / v, xy / (u * v), -xy / (u * v), -x / v, -one],
    ];
    CMatrix::from_rows(rows).expect("six rows of six")
}

pub fn build_szollosi(params: &SzollosiParams, tol: &Tolerances) -> Result<Chm> {
    let alpha = params.alpha;
    if !in_domain(alpha, tol) {
        return Err(ChmError::DomainViolation(format!(
            "D(alpha) = {:.6}, D(-alpha) = {:.6}; both must be <= 0",
            discriminant_d(alpha),
            discriminant_d(-alpha)
        )));
    }
    let sel = [params.sel_x, params.sel_y, params.sel_u, params.sel_v];
    if sel.iter().any(|&s| s > 2) || params.sel_x == params.sel_y || params.sel_u == params.sel_v {
        return Err(ChmError::InvalidConfig(format!(
            "root selection {sel:?} must use distinct indices in 0..3"
        )));
    }
    let r = cubic_roots(alpha);
    let s = cubic_roots(-alpha);
    let (x, y, u, v) = (r[params.sel_x], r[params.sel_y], s[params.sel_u], s[params.sel_v]);
    // Double and triple roots split by O(sqrt(eps)) and O(cbrt(eps)) numerically.
    let gap_limit = tol.eps_match.sqrt();
    for gap in [(x - y).norm(), (u - v).norm()] {
        if gap < gap_limit {
            return Err(ChmError::CoincidentRoots(gap));
        }
    }
    validate_chm(szollosi_matrix(x, y, u, v), tol)
}

/// Tries every root selection in lexicographic order and returns the first
/// that yields a CHM.
pub fn first_valid_szollosi(alpha: C64, tol: &Tolerances) -> Result<(SzollosiParams, Chm)> {
    let mut last = None;
    for sx in 0..3 {
        for sy in 0..3 {
            for su in 0..3 {
                for sv in 0..3 {
                    if sx == sy || su == sv {
                        continue;
                    }
                    let p = SzollosiParams::new(alpha, [sx, sy, su, sv]);
                    match build_szollosi(&p, tol) {
                        Ok(h) => return Ok((p, h)),
                        Err(e @ ChmError::DomainViolation(_)) => return Err(e),
                        Err(e) => last = Some(e),
                    }
                }
            }
        }
    }
    Err(last.expect("at least one selection tried"))
}
