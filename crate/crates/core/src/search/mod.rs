//! Numerical MUB-trio search and family parameter sweeps.

mod scan;
mod trio;

pub use scan::{family_scan, ParamGrid, ScanRow};
pub use trio::{random_unitary, restart_rng, seek_trio, RestartSummary, SearchConfig, SearchResult, StopReason};
