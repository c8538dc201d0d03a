//! Parameter sweeps over a family with census and verdict per point.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::census;
use crate::error::{ChmError, Result};
use crate::families::{
    all_symmetric_params, check_family_name, first_valid_szollosi, hermitian_theta_min, FamilySpec, H2Params,
    HermitianParams,
};
use crate::mub::exclusion_verdict;
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParamGrid {
    /// Evenly spread points (a Kronecker sequence for multi-parameter families).
    Uniform { points: usize },
    Random { points: usize, seed: u64 },
}

impl ParamGrid {
    /// `uniform:N` or `random:N`; random grids take `seed`.
    pub fn parse(spec: &str, seed: u64) -> Result<Self> {
        let (kind, n) = spec
            .split_once(':')
            .ok_or_else(|| ChmError::Parse(format!("grid spec `{spec}` must be KIND:N")))?;
        let points: usize = n
            .trim()
            .parse()
            .map_err(|_| ChmError::Parse(format!("bad point count `{n}`")))?;
        if points == 0 {
            return Err(ChmError::InvalidConfig("grid needs at least one point".into()));
        }
        match kind.trim() {
            "uniform" => Ok(ParamGrid::Uniform { points }),
            "random" => Ok(ParamGrid::Random { points, seed }),
            other => Err(ChmError::Parse(format!("unknown grid kind `{other}`"))),
        }
    }

    pub fn points(&self) -> usize {
        match *self {
            ParamGrid::Uniform { points } | ParamGrid::Random { points, .. } => points,
        }
    }
}

/// Unit-cube coordinates for every grid point.
fn unit_points(grid: &ParamGrid, dims: usize) -> Vec<Vec<f64>> {
    match *grid {
        ParamGrid::Uniform { points } => {
            // R_d sequence; the first axis is an even sweep
            // root of x^(dims+1) = x + 1
            let phi = (0..40).fold(2.0_f64, |x, _| (1.0 + x).powf(1.0 / (dims as f64 + 1.0)));
            (0..points)
                .map(|k| {
                    let mut v = Vec::with_capacity(dims);
                    v.push(if points > 1 { k as f64 / (points - 1) as f64 } else { 0.5 });
                    for a in 1..dims {
                        v.push((0.5 + k as f64 / phi.powi(a as i32 + 1)).fract());
                    }
                    v
                })
                .collect()
        }
        ParamGrid::Random { points, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..points).map(|_| (0..dims).map(|_| rng.gen::<f64>()).collect()).collect()
        }
    }
}

/// Maps a unit-interval coordinate onto `[-pi, -t0] U [t0, pi]`.
fn hermitian_theta(u: f64) -> f64 {
    let t0 = hermitian_theta_min();
    let half = PI - t0;
    let p = u * 2.0 * half;
    if p <= half {
        -PI + p
    } else {
        t0 + (p - half)
    }
}

/// Family specs for every grid point. Szollosi points carry only `alpha`; root
/// selection happens at build time.
fn family_points(family: &str, grid: &ParamGrid) -> Vec<ScanPoint> {
    let n = grid.points();
    match family {
        "fourier" => (0..n).map(|_| ScanPoint::Spec(FamilySpec::Fourier { d: 6 })).collect(),
        "bjorck" => (0..n).map(|_| ScanPoint::Spec(FamilySpec::Bjorck)).collect(),
        "symmetric" => {
            let all = all_symmetric_params();
            (0..n).map(|k| ScanPoint::Spec(FamilySpec::Symmetric(all[k % 4]))).collect()
        }
        "hermitian" => unit_points(grid, 1)
            .into_iter()
            .map(|u| ScanPoint::Spec(FamilySpec::Hermitian(HermitianParams::new(hermitian_theta(u[0]), 1))))
            .collect(),
        "h2" => unit_points(grid, 4)
            .into_iter()
            .map(|u| {
                let signs = H2Params::all_signs()[((u[3] * 8.0) as usize).min(7)];
                let (theta, phi, arg) = (TAU * u[0], TAU * u[1], TAU * u[2]);
                let signs = if matches!(grid, ParamGrid::Uniform { .. }) { [1, 1, 1] } else { signs };
                ScanPoint::Spec(FamilySpec::H2(H2Params::new(theta, phi, crate::matrix::cis(arg), signs)))
            })
            .collect(),
        "szollosi" => unit_points(grid, 2)
            .into_iter()
            // the open unit disk lies inside the admissible region
            .map(|u| ScanPoint::SzollosiAlpha(C64::from_polar(u[0].sqrt() * 0.999, TAU * u[1])))
            .collect(),
        _ => Vec::new(),
    }
}

enum ScanPoint {
    Spec(FamilySpec),
    SzollosiAlpha(C64),
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub index: usize,
    pub family: String,
    /// JSON-encoded parameters.
    pub params: String,
    pub census: Option<usize>,
    pub verdict: Option<String>,
    pub unimodular_dev: Option<f64>,
    pub orthogonal_dev: Option<f64>,
    pub error: Option<String>,
}

pub fn family_scan(family: &str, grid: &ParamGrid, tol: &Tolerances) -> Result<Vec<ScanRow>> {
    check_family_name(family)?;
    let points = family_points(family, grid);
    let rows = points
        .into_par_iter()
        .enumerate()
        .map(|(index, pt)| {
            let built = match pt {
                ScanPoint::Spec(spec) => {
                    let params = serde_json::to_string(&spec.provenance()["params"]).unwrap_or_default();
                    (params, spec.build(tol))
                }
                ScanPoint::SzollosiAlpha(alpha) => match first_valid_szollosi(alpha, tol) {
                    Ok((p, h)) => (serde_json::to_string(&p).unwrap_or_default(), Ok(h)),
                    Err(e) => (
                        serde_json::json!({ "alpha": [alpha.re, alpha.im] }).to_string(),
                        Err(e),
                    ),
                },
            };
            let (params, res) = built;
            let mut row = ScanRow {
                index,
                family: family.to_string(),
                params,
                census: None,
                verdict: None,
                unimodular_dev: None,
                orthogonal_dev: None,
                error: None,
            };
            match res {
                Ok(h) => {
                    let cert = h.certificate();
                    row.unimodular_dev = Some(cert.unimodular_dev);
                    row.orthogonal_dev = Some(cert.orthogonal_dev);
                    row.census = Some(census(&h, tol).count);
                    match exclusion_verdict(&h, tol) {
                        Ok(v) => row.verdict = Some(v.status.as_str().to_string()),
                        Err(e) => row.error = Some(e.to_string()),
                    }
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parse() {
        assert_eq!(ParamGrid::parse("uniform:50", 0).unwrap(), ParamGrid::Uniform { points: 50 });
        assert_eq!(
            ParamGrid::parse("random:7", 3).unwrap(),
            ParamGrid::Random { points: 7, seed: 3 }
        );
        assert!(ParamGrid::parse("uniform", 0).is_err());
        assert!(ParamGrid::parse("lattice:3", 0).is_err());
        assert!(ParamGrid::parse("uniform:0", 0).is_err());
    }

    #[test]
    fn hermitian_theta_covers_both_arcs() {
        let t0 = hermitian_theta_min();
        assert!((hermitian_theta(0.0) + PI).abs() < 1e-15);
        assert!((hermitian_theta(1.0) - PI).abs() < 1e-12);
        assert!((hermitian_theta(0.5) + t0).abs() < 1e-12);
        for k in 0..=100 {
            assert!(crate::families::hermitian_theta_allowed(hermitian_theta(k as f64 / 100.0)));
        }
    }

    #[test]
    fn hermitian_rows_all_excluded() {
        let rows = family_scan("hermitian", &ParamGrid::Uniform { points: 50 }, &Tolerances::default()).unwrap();
        assert_eq!(rows.len(), 50);
        for r in &rows {
            assert_eq!(r.verdict.as_deref(), Some("ExcludedNineCount"), "{r:?}");
        }
    }

    #[test]
    fn h2_random_generic() {
        let rows = family_scan(
            "h2",
            &ParamGrid::Random { points: 200, seed: 0 },
            &Tolerances::default(),
        )
        .unwrap();
        let nine = rows.iter().filter(|r| r.census == Some(9)).count();
        assert!(nine >= 190, "{nine}");
    }

    #[test]
    fn szollosi_points_inside_domain() {
        let rows = family_scan("szollosi", &ParamGrid::Uniform { points: 20 }, &Tolerances::default()).unwrap();
        assert!(rows.iter().all(|r| r.error.is_none()), "{rows:?}");
    }

    #[test]
    fn unknown_family() {
        assert!(matches!(
            family_scan("circulant", &ParamGrid::Uniform { points: 3 }, &Tolerances::default()),
            Err(ChmError::UnknownFamily(_))
        ));
    }
}
