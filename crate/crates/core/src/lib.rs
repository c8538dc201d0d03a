//! Complex Hadamard matrices of order six and mutually unbiased bases.
//!
//! The crate builds explicit CHM families, runs structural analysis
//! (2x2 Hadamard census, real blocks, fingerprints), checks the exclusion
//! criteria for extending a CHM to a MUB trio and runs numerical searches.

// `!(x < tol)` is deliberate: NaN must fail every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod chm;
pub mod error;
pub mod families;
pub mod io;
pub mod matrix;
pub mod monomial;
pub mod mub;
pub mod search;
pub mod tol;
pub mod zero_sum;

pub use analysis::{census, census_matrix, fingerprint, is_h2_reducible, real_block_search, SubmatrixCensus};
pub use chm::{dephase, validate_chm, Certificate, Chm};
pub use error::{ChmError, Result};
pub use families::FamilySpec;
pub use matrix::{CMatrix, C64};
pub use monomial::{MonomialPair, MonomialUnitary};
pub use tol::Tolerances;
