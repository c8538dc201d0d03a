use serde::{Deserialize, Serialize};

use crate::analysis::{census, real_block_search, shared_corner_pairs, CornerPair, Position, RealBlock};
use crate::chm::{dephase, Chm};
use crate::error::{ChmError, Result};
use crate::tol::Tolerances;

pub const CITE_NINE: &str = "Thm1";
pub const CITE_REAL_BLOCK: &str = "Lem3";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictStatus {
    ExcludedNineCount,
    ExcludedRealBlock,
    ExcludedPattern,
    NotExcludedByTheseCriteria,
}

impl VerdictStatus {
    pub fn is_excluded(self) -> bool {
        self != VerdictStatus::NotExcludedByTheseCriteria
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::ExcludedNineCount => "ExcludedNineCount",
            VerdictStatus::ExcludedRealBlock => "ExcludedRealBlock",
            VerdictStatus::ExcludedPattern => "ExcludedPattern",
            VerdictStatus::NotExcludedByTheseCriteria => "NotExcludedByTheseCriteria",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    /// Census of the dephased matrix.
    pub census_count: usize,
    pub positions: Vec<Position>,
    pub pattern: Option<CornerPair>,
    pub real_block: Option<RealBlock>,
}

/// `NotExcludedByTheseCriteria` is not a claim that the matrix extends to a
/// MUB trio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub evidence: Evidence,
    pub citations: Vec<String>,
}

impl Verdict {
    pub fn is_excluded(&self) -> bool {
        self.status.is_excluded()
    }

    pub fn summary(&self) -> String {
        let ev = &self.evidence;
        match self.status {
            VerdictStatus::ExcludedNineCount => {
                format!("EXCLUDED ({CITE_NINE}): census={} \u{2260} 9", ev.census_count)
            }
            VerdictStatus::ExcludedPattern => {
                let (r, c) = ev.pattern.as_ref().map_or((0, 0), |p| p.corner);
                format!("EXCLUDED ({CITE_NINE}): shared-corner pattern at ({r},{c})")
            }
            VerdictStatus::ExcludedRealBlock => {
                let b = ev.real_block.as_ref();
                format!(
                    "EXCLUDED ({CITE_REAL_BLOCK}): real block rows {:?} cols {:?}",
                    b.map(|b| b.rows.clone()).unwrap_or_default(),
                    b.map(|b| b.cols.clone()).unwrap_or_default()
                )
            }
            VerdictStatus::NotExcludedByTheseCriteria => "NOT EXCLUDED by implemented criteria".to_string(),
        }
    }
}

/// Runs the exclusion criteria in order: census count, shared-corner pattern,
/// real 2x3 or 3x2 block.
pub fn exclusion_verdict(h: &Chm, tol: &Tolerances) -> Result<Verdict> {
    if h.dim() != 6 {
        return Err(ChmError::DimensionMismatch {
            expected: 6,
            found: h.dim(),
        });
    }
    let (dephased, _) = dephase(h, tol)?;
    let cen = census(&dephased, tol);
    let mut evidence = Evidence {
        census_count: cen.count,
        positions: cen.positions.clone(),
        pattern: None,
        real_block: None,
    };
    let verdict = |status, evidence, cite: &str| Verdict {
        status,
        evidence,
        citations: vec![cite.to_string()],
    };

    if cen.count >= 1 && cen.count != 9 {
        return Ok(verdict(VerdictStatus::ExcludedNineCount, evidence, CITE_NINE));
    }
    if let Some(p) = shared_corner_pairs(&cen).into_iter().next() {
        evidence.pattern = Some(p);
        return Ok(verdict(VerdictStatus::ExcludedPattern, evidence, CITE_NINE));
    }
    for (r, c) in [(2, 3), (3, 2)] {
        if let Some(b) = real_block_search(&dephased, r, c, tol)?.blocks.into_iter().next() {
            evidence.real_block = Some(b);
            return Ok(verdict(VerdictStatus::ExcludedRealBlock, evidence, CITE_REAL_BLOCK));
        }
    }
    Ok(Verdict {
        status: VerdictStatus::NotExcludedByTheseCriteria,
        evidence,
        citations: Vec::new(),
    })
}
