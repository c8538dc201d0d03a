//! Numeric verifiers for the eighteen-submatrix case and the symmetric case.

use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::census_matrix;
use crate::chm::validate_chm;
use crate::error::{ChmError, Result};
use crate::families::{all_symmetric_params, assemble_h2, derive_h2, symmetric_h2_instance, H2Params, PhiSign};
use crate::matrix::{cis, CMatrix, C64};
use crate::monomial::{MonomialPair, MonomialUnitary};
use crate::mub::verdict::{exclusion_verdict, VerdictStatus};
use crate::tol::Tolerances;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub const EIGHTEEN_INDEX_NOTE: &str = "entries are 0-indexed: (2,2)=m33, (2,4)=m35, (4,2)=m53, (4,4)=m55, (5,5)=m66 in 1-indexed notation; \
equations m33=-1, m35=-z3, m53=-z1, m55=z2*z4, consequence m66=-1";

pub const SYMMETRIC_INDEX_NOTE: &str = "entries are 0-indexed: (3,4)=h45 and (4,3)=h54 in 1-indexed notation";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EighteenGrid {
    /// Points per axis; each of theta, phi and arg z1 spans `[0, 2 pi)`.
    pub resolution: usize,
    /// Maximum compass sweeps per seed.
    pub polish_budget: usize,
    /// Grid minima with summed squared residual above this are not refined.
    pub seed_threshold: f64,
}

impl Default for EighteenGrid {
    fn default() -> Self {
        Self {
            resolution: 64,
            polish_budget: 200,
            seed_threshold: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EighteenCandidate {
    pub signs: [i8; 3],
    pub grid_index: [usize; 3],
    pub theta: f64,
    pub phi: f64,
    pub z1_arg: f64,
    /// `|m(2,2)+1|, |m(2,4)+z3|, |m(4,2)+z1|, |m(4,4)-z2 z4|`.
    pub equation_residuals: [f64; 4],
    /// `|m(5,5) + 1|`.
    pub m66_residual: f64,
    pub census_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EighteenReport {
    pub schema_version: u32,
    pub index_note: String,
    pub grid_spec: EighteenGrid,
    pub points_evaluated: usize,
    pub skipped_degenerate: usize,
    pub skipped_inconsistent: usize,
    pub seeds: usize,
    /// Seeds whose polish did not bring all four residuals below `eps_match`.
    pub unconverged: usize,
    pub candidates: Vec<EighteenCandidate>,
    /// Candidates with `|m66 + 1| >= eps_match`.
    pub violations: usize,
    /// Candidates with census below nine.
    pub census_violations: usize,
    pub max_m66_residual: f64,
}

enum Eval {
    Ok([C64; 4], CMatrix),
    Degenerate,
    Inconsistent,
}

fn evaluate(x: [f64; 3], signs: [i8; 3], tol: &Tolerances) -> Eval {
    let params = H2Params::new(x[0], x[1], cis(x[2]), signs);
    match derive_h2(&params, tol) {
        Ok(der) => {
            let [z1, z2, z3, z4] = der.z;
            let m = assemble_h2(&der);
            let r = [m[(2, 2)] + 1.0, m[(2, 4)] + z3, m[(4, 2)] + z1, m[(4, 4)] - z2 * z4];
            Eval::Ok(r, m)
        }
        Err(ChmError::ConsistencyFailure(_)) => Eval::Inconsistent,
        Err(_) => Eval::Degenerate,
    }
}

fn objective(x: [f64; 3], signs: [i8; 3], tol: &Tolerances) -> f64 {
    match evaluate(x, signs, tol) {
        Eval::Ok(r, _) => r.iter().map(|z| z.norm_sqr()).sum(),
        _ => f64::INFINITY,
    }
}

fn max_residual(r: &[C64; 4]) -> f64 {
    r.iter().fold(0.0, |a, z| a.max(z.norm()))
}

/// Compass search: try `+-step` on each coordinate, halve when a sweep fails.
fn compass_polish(mut x: [f64; 3], signs: [i8; 3], step0: f64, budget: usize, tol: &Tolerances) -> [f64; 3] {
    let target = (1e-3 * tol.eps_match).powi(2);
    let mut fx = objective(x, signs, tol);
    let mut step = step0;
    for _ in 0..budget {
        if fx < target || step < 1e-15 {
            break;
        }
        let mut improved = false;
        for axis in 0..3 {
            for dir in [1.0, -1.0] {
                let mut y = x;
                y[axis] += dir * step;
                let fy = objective(y, signs, tol);
                if fy < fx {
                    x = y;
                    fx = fy;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    x
}

/// Damped Gauss-Newton on the eight real residual components with a
/// forward-difference Jacobian. Only accepts decreasing steps.
fn gauss_newton_finish(mut x: [f64; 3], signs: [i8; 3], iters: usize, tol: &Tolerances) -> [f64; 3] {
    let flat = |x: [f64; 3]| -> Option<[f64; 8]> {
        match evaluate(x, signs, tol) {
            Eval::Ok(r, _) => {
                let mut v = [0.0; 8];
                for k in 0..4 {
                    v[2 * k] = r[k].re;
                    v[2 * k + 1] = r[k].im;
                }
                Some(v)
            }
            _ => None,
        }
    };
    let norm2 = |v: &[f64; 8]| v.iter().map(|a| a * a).sum::<f64>();
    for _ in 0..iters {
        let Some(r0) = flat(x) else { break };
        let f0 = norm2(&r0);
        if f0 < 1e-28 {
            break;
        }
        let h = 1e-7;
        let mut jac = nalgebra::DMatrix::<f64>::zeros(8, 3);
        for a in 0..3 {
            let mut y = x;
            y[a] += h;
            let Some(r1) = flat(y) else { return x };
            for k in 0..8 {
                jac[(k, a)] = (r1[k] - r0[k]) / h;
            }
        }
        let rhs = nalgebra::DVector::from_iterator(8, r0.iter().map(|v| -v));
        let Ok(delta) = jac.svd(true, true).solve(&rhs, 1e-12) else { break };
        let mut t = 1.0;
        let mut accepted = false;
        while t > 1e-6 {
            let y = [x[0] + t * delta[0], x[1] + t * delta[1], x[2] + t * delta[2]];
            if let Some(r1) = flat(y) {
                if norm2(&r1) < f0 {
                    x = y;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    x
}

/// Scans `(theta, phi, arg z1)` over the grid and all eight branch signs,
/// refines grid-local minima of the summed squared residual of the four
/// equations, and checks `m66 = -1` at every refined solution.
pub fn verify_eighteen_contradiction(grid: &EighteenGrid, tol: &Tolerances) -> Result<EighteenReport> {
    let n = grid.resolution;
    if n == 0 {
        return Err(ChmError::InvalidConfig("grid resolution must be positive".into()));
    }
    let h = TAU / n as f64;
    let cells = n * n * n;
    let all_signs = H2Params::all_signs();
    let point = |cell: usize| -> ([usize; 3], [f64; 3]) {
        let idx = [cell / (n * n), (cell / n) % n, cell % n];
        (idx, [idx[0] as f64 * h, idx[1] as f64 * h, idx[2] as f64 * h])
    };

    // 0 = ok, 1 = degenerate, 2 = inconsistent
    let values: Vec<(f64, u8)> = (0..8 * cells)
        .into_par_iter()
        .map(|k| {
            let (_, x) = point(k % cells);
            match evaluate(x, all_signs[k / cells], tol) {
                Eval::Ok(r, _) => (r.iter().map(|z| z.norm_sqr()).sum(), 0),
                Eval::Degenerate => (f64::INFINITY, 1),
                Eval::Inconsistent => (f64::INFINITY, 2),
            }
        })
        .collect();
    let skipped_degenerate = values.iter().filter(|v| v.1 == 1).count();
    let skipped_inconsistent = values.iter().filter(|v| v.1 == 2).count();

    let wrap = |i: usize, d: isize| ((i as isize + d).rem_euclid(n as isize)) as usize;
    let seeds: Vec<usize> = (0..8 * cells)
        .filter(|&k| {
            let v = values[k].0;
            if !(v < grid.seed_threshold) {
                return false;
            }
            let base = k - k % cells;
            let (idx, _) = point(k % cells);
            (0..3).all(|axis| {
                [-1isize, 1].iter().all(|&d| {
                    let mut j = idx;
                    j[axis] = wrap(j[axis], d);
                    let other = base + j[0] * n * n + j[1] * n + j[2];
                    // ties broken by index so flat regions yield one seed
                    other == k || v < values[other].0 || (v == values[other].0 && k < other)
                })
            })
        })
        .collect();

    let refined: Vec<Option<EighteenCandidate>> = seeds
        .par_iter()
        .map(|&k| {
            let signs = all_signs[k / cells];
            let (idx, x0) = point(k % cells);
            let x = compass_polish(x0, signs, 0.5 * h, grid.polish_budget, tol);
            let x = gauss_newton_finish(x, signs, 50, tol);
            let Eval::Ok(r, m) = evaluate(x, signs, tol) else {
                return None;
            };
            let res = r.map(|z| z.norm());
            if max_residual(&r) >= tol.eps_match {
                return None;
            }
            Some(EighteenCandidate {
                signs,
                grid_index: idx,
                theta: x[0],
                phi: x[1],
                z1_arg: x[2],
                equation_residuals: res,
                m66_residual: (m[(5, 5)] + 1.0).norm(),
                census_count: census_matrix(&m, tol).count,
            })
        })
        .collect();

    let unconverged = refined.iter().filter(|c| c.is_none()).count();
    let candidates: Vec<EighteenCandidate> = refined.into_iter().flatten().collect();
    let violations = candidates.iter().filter(|c| c.m66_residual >= tol.eps_match).count();
    let census_violations = candidates.iter().filter(|c| c.census_count < 9).count();
    let max_m66_residual = candidates.iter().fold(0.0, |a: f64, c| a.max(c.m66_residual));
    Ok(EighteenReport {
        schema_version: REPORT_SCHEMA_VERSION,
        index_note: EIGHTEEN_INDEX_NOTE.to_string(),
        grid_spec: *grid,
        points_evaluated: 8 * cells,
        skipped_degenerate,
        skipped_inconsistent,
        seeds: seeds.len(),
        unconverged,
        candidates,
        violations,
        census_violations,
        max_m66_residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricCheck {
    pub phi_sign: PhiSign,
    pub fixed_point: usize,
    pub error: Option<String>,
    /// `|h(3,4) + 1|`.
    pub residual_34: f64,
    /// `|h(4,3) + 1|`.
    pub residual_43: f64,
    pub symmetry_residual: f64,
    pub verdict: Option<VerdictStatus>,
    /// Whether the verdict was unchanged on every random equivalent copy.
    pub verdict_stable: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricReport {
    pub schema_version: u32,
    pub index_note: String,
    /// Random equivalent copies per instance used to recheck the verdict.
    pub samples: usize,
    pub seed: u64,
    pub instances: Vec<SymmetricCheck>,
    pub all_passed: bool,
}

/// Builds every symmetric instance and checks `h(3,4) = h(4,3) = -1`,
/// symmetry, and that the verdict excludes it on `samples` equivalent copies.
pub fn verify_symmetric_minus_one(samples: usize, seed: u64, tol: &Tolerances) -> Result<SymmetricReport> {
    if samples == 0 {
        return Err(ChmError::InvalidConfig("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::new();
    for p in all_symmetric_params() {
        let mut check = SymmetricCheck {
            phi_sign: p.phi_sign,
            fixed_point: p.fixed_point,
            error: None,
            residual_34: f64::NAN,
            residual_43: f64::NAN,
            symmetry_residual: f64::NAN,
            verdict: None,
            verdict_stable: false,
            passed: false,
        };
        match symmetric_h2_instance(p.phi_sign, p.fixed_point, tol) {
            Err(e) => check.error = Some(e.to_string()),
            Ok(inst) => {
                let m = inst.chm.matrix();
                check.residual_34 = (m[(3, 4)] + 1.0).norm();
                check.residual_43 = (m[(4, 3)] + 1.0).norm();
                check.symmetry_residual = m.max_abs_diff(&m.transpose());
                match exclusion_verdict(&inst.chm, tol) {
                    Err(e) => check.error = Some(e.to_string()),
                    Ok(v) => {
                        let mut stable = true;
                        for _ in 0..samples {
                            let pair = MonomialPair {
                                left: MonomialUnitary::random(6, &mut rng),
                                right: MonomialUnitary::random(6, &mut rng),
                            };
                            let copy = pair.apply(m).and_then(|c| validate_chm(c, tol));
                            let same = copy
                                .and_then(|c| exclusion_verdict(&c, tol))
                                .map(|w| w.status == v.status);
                            stable &= same.unwrap_or(false);
                        }
                        check.verdict = Some(v.status);
                        check.verdict_stable = stable;
                    }
                }
                check.passed = check.residual_34 < tol.eps_match
                    && check.residual_43 < tol.eps_match
                    && check.symmetry_residual < tol.eps_orth
                    && check.verdict.is_some_and(|s| s.is_excluded())
                    && check.verdict_stable;
            }
        }
        instances.push(check);
    }
    let all_passed = instances.iter().all(|c| c.passed);
    Ok(SymmetricReport {
        schema_version: REPORT_SCHEMA_VERSION,
        index_note: SYMMETRIC_INDEX_NOTE.to_string(),
        samples,
        seed,
        instances,
        all_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_grid_reports_without_failing() {
        let grid = EighteenGrid {
            resolution: 3,
            ..EighteenGrid::default()
        };
        let rep = verify_eighteen_contradiction(&grid, &Tolerances::default()).unwrap();
        assert_eq!(rep.points_evaluated, 8 * 27);
        assert_eq!(rep.violations, 0);
        assert_eq!(rep.candidates.len() + rep.unconverged, rep.seeds);
    }

    #[test]
    fn small_grid_finds_solutions_with_m66() {
        let grid = EighteenGrid {
            resolution: 12,
            ..EighteenGrid::default()
        };
        let tol = Tolerances::default();
        let rep = verify_eighteen_contradiction(&grid, &tol).unwrap();
        assert!(!rep.candidates.is_empty());
        for c in &rep.candidates {
            assert!(c.equation_residuals.iter().all(|&r| r < tol.eps_match));
            assert!(c.m66_residual < tol.eps_match, "{c:?}");
            assert!(c.census_count >= 9);
        }
        let again = verify_eighteen_contradiction(&grid, &tol).unwrap();
        assert_eq!(rep, again);
    }

    #[test]
    fn zero_resolution_rejected() {
        let grid = EighteenGrid {
            resolution: 0,
            ..EighteenGrid::default()
        };
        assert!(verify_eighteen_contradiction(&grid, &Tolerances::default()).is_err());
    }

    #[test]
    fn symmetric_instances_pass() {
        let rep = verify_symmetric_minus_one(5, 0, &Tolerances::default()).unwrap();
        assert_eq!(rep.instances.len(), 4);
        for c in &rep.instances {
            assert!(c.passed, "{c:?}");
            assert!(c.residual_34 < 1e-9 && c.residual_43 < 1e-9);
        }
        assert!(verify_symmetric_minus_one(0, 0, &Tolerances::default()).is_err());
    }
}
