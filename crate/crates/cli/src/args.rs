use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "chm", version, about = "Complex Hadamard matrix and MUB toolkit")]
pub struct Cli {
    /// Run log path; overrides CHM_RUN_LOG.
    #[arg(long, global = true)]
    pub run_log: Option<PathBuf>,

    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Build a matrix from a named family and write it.
    Gen(GenArgs),
    /// Count 2x2 Hadamard submatrices.
    Census(CensusArgs),
    /// Run the exclusion criteria.
    Exclude(ExcludeArgs),
    /// Write the dephased form of a matrix.
    Dephase(DephaseArgs),
    /// Numeric verifiers.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Search for a MUB trio by alternating projections.
    Search(SearchArgs),
    /// Sweep a family over a parameter grid.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhiChoice {
    Zero,
    Pi,
}

/// Parameters shared by every family; each family reads the ones it needs.
#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    /// Fourier order.
    #[arg(long, default_value_t = 6)]
    pub d: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub theta: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub phi: f64,
    /// Argument of z1 (h2 family).
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub z1_arg: f64,
    /// Branch signs s2,s3,s4 (h2 family), e.g. `1,-1,1`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 3)]
    pub signs: Option<Vec<i8>>,
    /// Szollosi alpha, e.g. `0.3+0.2i`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Szollosi root selection x,y,u,v; the first valid one when omitted.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    pub sel: Option<Vec<usize>>,
    /// Square-root branch (hermitian family).
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub branch: i8,
    #[arg(long, value_enum, default_value_t = PhiChoice::Zero)]
    pub phi_sign: PhiChoice,
    #[arg(long, default_value_t = 0)]
    pub fixed_point: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct GenArgs {
    pub family: String,
    #[command(flatten)]
    pub params: FamilyArgs,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct CensusArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Full JSON report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ExcludeArgs {
    #[arg(long = "in", conflicts_with = "family", required_unless_present = "family")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<String>,
    #[command(flatten)]
    pub params: FamilyArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct DephaseArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyCommand {
    Eighteen(EighteenArgs),
    Symmetric(SymmetricArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct EighteenArgs {
    #[arg(long, default_value_t = 64)]
    pub resolution: usize,
    #[arg(long, default_value_t = 200)]
    pub polish_budget: usize,
    #[arg(long, default_value_t = 0.5)]
    pub seed_threshold: f64,
    #[arg(long, default_value = "verify-eighteen.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct SymmetricArgs {
    /// Random equivalent copies per instance.
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, default_value = "verify-symmetric.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub target: f64,
    #[arg(long, default_value_t = 500)]
    pub window: usize,
    #[arg(long, default_value = "search.json")]
    pub out: PathBuf,
    /// Per-restart (restart, round, defect) rows.
    #[arg(long)]
    pub trace_csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub family: String,
    /// `uniform:N` or `random:N`.
    #[arg(long)]
    pub grid: String,
    #[arg(long)]
    pub out: PathBuf,
}
