use serde::{Deserialize, Serialize};

use crate::error::{ChmError, Result};

/// Layered numeric tolerances.
///
/// `eps_entry` bounds unimodularity, `eps_orth` bounds row orthogonality and
/// `eps_match` bounds acceptance of equation solutions. The ordering
/// `eps_entry <= eps_orth <= eps_match` means an object certified under the
/// tighter bound never fails a looser downstream check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eps_entry: f64,
    pub eps_orth: f64,
    pub eps_match: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_entry: 1e-9,
            eps_orth: 1e-8,
            eps_match: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn new(eps_entry: f64, eps_orth: f64, eps_match: f64) -> Result<Self> {
        let tol = Self {
            eps_entry,
            eps_orth,
            eps_match,
        };
        tol.check()?;
        Ok(tol)
    }

    pub fn check(&self) -> Result<()> {
        for (name, v) in [
            ("eps_entry", self.eps_entry),
            ("eps_orth", self.eps_orth),
            ("eps_match", self.eps_match),
        ] {
            if !(v > 0.0 && v < 1e-3) {
                return Err(ChmError::InvalidTolerances(format!(
                    "{name} = {v} must lie in (0, 1e-3)"
                )));
            }
        }
        if !(self.eps_entry <= self.eps_orth && self.eps_orth <= self.eps_match) {
            return Err(ChmError::InvalidTolerances(
                "require eps_entry <= eps_orth <= eps_match".into(),
            ));
        }
        Ok(())
    }

    /// Threshold on `|a d + b c|` below which a 2x2 submatrix counts as Hadamard.
    pub fn census_threshold(&self) -> f64 {
        2.0 * self.eps_orth
    }
}
