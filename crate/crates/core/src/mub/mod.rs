//! Unbiasedness checks, the exclusion engine and numeric verifiers.

mod defect;
mod verdict;
mod verify;

pub use defect::{defect_report, is_mub_set, raw_defect, unbiasedness_defect, DefectReport};
pub use verdict::{exclusion_verdict, Evidence, Verdict, VerdictStatus, CITE_NINE, CITE_REAL_BLOCK};
pub use verify::{
    verify_eighteen_contradiction, verify_symmetric_minus_one, EighteenCandidate, EighteenGrid,
    EighteenReport, SymmetricCheck, SymmetricReport, EIGHTEEN_INDEX_NOTE, REPORT_SCHEMA_VERSION,
    SYMMETRIC_INDEX_NOTE,
};
