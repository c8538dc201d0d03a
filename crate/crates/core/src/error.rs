use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChmError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry ({row},{col}) is not unimodular (deviation {deviation:.3e})")]
    NotUnimodular {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("rows {0} and {1} are not orthogonal (deviation {deviation:.3e})", rows.0, rows.1)]
    NotOrthogonal { rows: (usize, usize), deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("values do not sum to zero (|sum| = {0:.3e})")]
    NotZeroSum(f64),

    #[error("expected 3 or 4 values, got {0}")]
    UnsupportedArity(usize),

    #[error("degenerate Mobius map: |denominator| = {0:.3e}")]
    DegenerateMobius(f64),

    #[error("Mobius consistency check failed (residual {0:.3e})")]
    ConsistencyFailure(f64),

    #[error("parameter outside the family domain: {0}")]
    DomainViolation(String),

    #[error("selected cubic roots coincide (|x - y| = {0:.3e})")]
    CoincidentRoots(f64),

    #[error("square-root branch {requested} does not give a CHM; working branch: {working:?}")]
    BranchFailure { requested: i8, working: Option<i8> },

    #[error("Mobius fixed point is off the unit circle (||w| - 1| = {0:.3e})")]
    NoUnimodularFixedPoint(f64),

    #[error("matrix is not symmetric (max |H - H^T| = {0:.3e})")]
    SymmetryFailure(f64),

    #[error("no branch places -1 at entry (3,4) (best residual {0:.3e})")]
    MissingMinusOne(f64),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("entry ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, ChmError>;
