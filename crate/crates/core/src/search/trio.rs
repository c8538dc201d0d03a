//! Alternating projections toward a MUB trio `{I, V, W, X}`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ChmError, Result};
use crate::matrix::{cis, nearest_unitary, CMatrix, C64};
use crate::mub::raw_defect;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dim: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub master_seed: u64,
    pub target_defect: f64,
    pub stagnation_window: usize,
    /// Keep the per-round defect trace of each restart.
    pub record_trace: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            dim: 6,
            restarts: 8,
            max_iters: 10_000,
            master_seed: 0,
            target_defect: 1e-8,
            stagnation_window: 500,
            record_trace: false,
        }
    }
}

impl SearchConfig {
    pub fn check(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(ChmError::InvalidDimension(self.dim));
        }
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(ChmError::InvalidConfig("restarts and max_iters must be at least 1".into()));
        }
        if !(self.target_defect > 0.0) {
            return Err(ChmError::InvalidConfig("target_defect must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    Target,
    MaxIters,
    Stagnation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartSummary {
    pub index: usize,
    /// ChaCha stream id under `master_seed`.
    pub stream: u64,
    pub final_defect: f64,
    pub iterations: usize,
    pub accepted_rounds: usize,
    pub stop: StopReason,
    /// Defect after each accepted round; empty unless traces were requested.
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub config: SearchConfig,
    pub best_bases: [CMatrix; 3],
    pub best_defect: f64,
    pub best_restart: usize,
    pub iterations_used: usize,
    pub restarts: Vec<RestartSummary>,
}

/// Restart `k` draws from stream `k` of a ChaCha generator keyed by the master seed.
pub fn restart_rng(master_seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(restart as u64);
    rng
}

/// Haar-style random unitary: QR of a complex Gaussian matrix with the
/// diagonal of `R` made positive.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let g = DMatrix::<C64>::from_fn(d, d, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..d {
        let rc = r[(c, c)];
        let ph = if rc.norm() > 0.0 { rc / rc.norm() } else { C64::new(1.0, 0.0) };
        for row in 0..d {
            q[(row, c)] *= ph;
        }
    }
    CMatrix::from_nalgebra(&q)
}

/// Entrywise projection onto modulus `1/sqrt d`, keeping phases.
fn flatten<R: Rng + ?Sized>(g: &CMatrix, rng: &mut R) -> CMatrix {
    let m = 1.0 / (g.rows() as f64).sqrt();
    let mut out = g.clone();
    for r in 0..g.rows() {
        for c in 0..g.cols() {
            let z = g[(r, c)];
            out[(r, c)] = if z.norm() > 1e-300 {
                z * (m / z.norm())
            } else {
                cis(rng.gen_range(0.0..std::f64::consts::TAU)) * m
            };
        }
    }
    out
}

fn blend(a: &CMatrix, b: &CMatrix, t: f64) -> CMatrix {
    CMatrix::from_fn(a.rows(), a.cols(), |r, c| a[(r, c)] * (1.0 - t) + b[(r, c)] * t)
}

fn trio_defect(bases: &[CMatrix; 3]) -> f64 {
    let id = CMatrix::identity(bases[0].rows());
    let mut worst = 0.0_f64;
    for (i, b) in bases.iter().enumerate() {
        worst = worst.max(raw_defect(&id, b));
        for c in &bases[i + 1..] {
            worst = worst.max(raw_defect(b, c));
        }
    }
    worst
}

/// One round over all six pairs of `{I, V, W, X}` with step weight `lambda`.
fn projection_round<R: Rng + ?Sized>(bases: &[CMatrix; 3], lambda: f64, rng: &mut R) -> [CMatrix; 3] {
    let mut b = bases.clone();
    for v in b.iter_mut() {
        // I^dagger V = V; the identity stays fixed so V takes the full correction
        let target = flatten(v, rng);
        *v = nearest_unitary(&blend(v, &target, lambda));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let g = &b[i].adjoint() * &b[j];
            let gf = flatten(&g, rng);
            let to_j = &b[i] * &gf;
            let to_i = &b[j] * &gf.adjoint();
            let half = 0.5 * lambda;
            let new_j = nearest_unitary(&blend(&b[j], &to_j, half));
            let new_i = nearest_unitary(&blend(&b[i], &to_i, half));
            b[i] = new_i;
            b[j] = new_j;
        }
    }
    b
}

fn run_restart(cfg: &SearchConfig, index: usize) -> ([CMatrix; 3], RestartSummary) {
    let mut rng = restart_rng(cfg.master_seed, index);
    let d = cfg.dim;
    let mut bases = [
        random_unitary(d, &mut rng),
        random_unitary(d, &mut rng),
        random_unitary(d, &mut rng),
    ];
    let mut defect = trio_defect(&bases);
    let mut lambda = 1.0;
    let mut accepted = Vec::new();
    let mut history = vec![defect];
    let mut stop = StopReason::MaxIters;
    let mut iterations = 0;
    while iterations < cfg.max_iters {
        if defect < cfg.target_defect {
            stop = StopReason::Target;
            break;
        }
        iterations += 1;
        let cand = projection_round(&bases, lambda, &mut rng);
        let cd = trio_defect(&cand);
        if cd < defect {
            bases = cand;
            defect = cd;
            lambda = (2.0 * lambda).min(1.0);
            if cfg.record_trace {
                accepted.push(defect);
            }
        } else {
            lambda *= 0.5;
        }
        history.push(defect);
        let w = cfg.stagnation_window;
        if w > 0 && history.len() > w {
            let old = history[history.len() - 1 - w];
            if (old - defect) <= 1e-12 * old {
                stop = StopReason::Stagnation;
                break;
            }
        }
    }
    if defect < cfg.target_defect {
        stop = StopReason::Target;
    }
    let accepted_rounds = history.windows(2).filter(|w| w[1] < w[0]).count();
    let summary = RestartSummary {
        index,
        stream: index as u64,
        final_defect: defect,
        iterations,
        accepted_rounds,
        stop,
        trace: accepted,
    };
    (bases, summary)
}

/// Runs all restarts in parallel and returns the best by `(defect, index)`.
pub fn seek_trio(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.check()?;
    let runs: Vec<([CMatrix; 3], RestartSummary)> =
        (0..cfg.restarts).into_par_iter().map(|k| run_restart(cfg, k)).collect();
    let best = runs
        .iter()
        .min_by(|a, b| {
            a.1.final_defect
                .total_cmp(&b.1.final_defect)
                .then(a.1.index.cmp(&b.1.index))
        })
        .expect("at least one restart");
    let best_bases = best.0.clone();
    let best_restart = best.1.index;
    let best_defect = trio_defect(&best_bases);
    let iterations_used = runs.iter().map(|r| r.1.iterations).sum();
    Ok(SearchResult {
        config: *cfg,
        best_bases,
        best_defect,
        best_restart,
        iterations_used,
        restarts: runs.into_iter().map(|r| r.1).collect(),
    })
}
