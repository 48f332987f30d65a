use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Geometric quantum discord, negativity and key-rate bounds for bipartite
/// states.
///
/// Every flag may also be set in a flat `key = value` file passed with
/// `--config`; keys are the long flag names (`param`, `grid` and `dims` take
/// comma-separated lists). Flags on the command line override the file.
///
/// Exit codes: 0 success, 1 other failure, 2 invalid input, 3 dimension
/// error, 4 trace-norm condition O4 violated, 5 unknown family.
#[derive(Debug, Parser)]
#[command(name = "geodiscord", version, about, long_about)]
pub struct Cli {
    /// Flat key = value file with default values for any flag.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Geometric discord of a catalog state or matrix file, as JSON.
    Discord(DiscordArgs),
    /// Negativity and partial-transpose spectrum summary, as JSON.
    Negativity(StateArgs),
    /// PPT / NPT classification, as JSON.
    Classify(StateArgs),
    /// Distillable-key lower bound for a shield quadruple, as JSON.
    Keyrate(KeyrateArgs),
    /// Evaluate quantities over a parameter grid; writes CSV or JSON.
    Sweep(SweepArgs),
    /// List the state and shield families.
    Catalog(CatalogArgs),
    /// Compare the analytic formulas with the numerical oracle on random states.
    Audit(AuditArgs),
    /// Print the generalised Gell-Mann basis for one dimension.
    BasisDump(BasisArgs),
}

#[derive(Debug, Args, Default)]
pub struct StateArgs {
    /// Catalog family name (see `catalog`).
    #[arg(long)]
    pub family: Option<String>,

    /// Family parameter as name=value; repeat for several.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,

    /// JSON matrix file {rows, cols, re, im} with row-major entries.
    #[arg(long, conflicts_with = "family")]
    pub file: Option<PathBuf>,

    /// Local dimensions d1 d2 of a matrix file; inferred as d x d if omitted.
    #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
    pub dims: Vec<String>,
}

#[derive(Debug, Args, Default)]
pub struct EngineArgs {
    /// analytic (closed-form eigenvalue formula) or oracle (numerical minimisation).
    #[arg(long)]
    pub engine: Option<String>,

    /// Which correlation product enters the formula: A_side (T Tᵀ) or B_side (Tᵀ T).
    #[arg(long)]
    pub variant: Option<String>,

    /// Oracle restarts [default: 200].
    #[arg(long)]
    pub restarts: Option<usize>,

    /// Oracle seed [default: $GEODISCORD_SEED, else 0].
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args, Default)]
pub struct DiscordArgs {
    #[command(flatten)]
    pub state: StateArgs,

    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args, Default)]
pub struct KeyrateArgs {
    /// Shield family name (qkd_*).
    #[arg(long)]
    pub family: Option<String>,

    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,

    /// Four matrix files σ0 σ1 σ2 σ3.
    #[arg(long, num_args = 4, conflicts_with = "family", value_names = ["S0", "S1", "S2", "S3"])]
    pub files: Vec<PathBuf>,

    /// Local shield dimension d (the σ are d² x d²); inferred if omitted.
    #[arg(long)]
    pub dim: Option<usize>,

    /// Report the bound even when O4 fails instead of exiting with 4.
    #[arg(long)]
    pub allow_o4_violation: bool,

    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args, Default)]
pub struct SweepArgs {
    /// State or shield family, or kd_bound for the bound as a function of d1_sq, d2_sq.
    #[arg(long)]
    pub family: Option<String>,

    /// Parameter held fixed, name=value.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,

    /// Grid axis name=start:stop:points; give one or two.
    #[arg(long, value_name = "NAME=START:STOP:POINTS")]
    pub grid: Vec<String>,

    /// Comma-separated subset of discord, negativity, classification [default: discord].
    #[arg(long)]
    pub quantities: Option<String>,

    /// Output file; stdout if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// csv or json [default: csv].
    #[arg(long)]
    pub format: Option<String>,

    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args, Default)]
pub struct CatalogArgs {
    /// Show a single family.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct AuditArgs {
    /// Local dimensions d1 d2 [default: 2 2].
    #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
    pub dims: Vec<String>,

    /// Number of random states [default: 100].
    #[arg(long)]
    pub samples: Option<usize>,

    /// Base seed [default: $GEODISCORD_SEED, else 0].
    #[arg(long)]
    pub seed: Option<u64>,

    /// Oracle restarts per state [default: 200].
    #[arg(long)]
    pub restarts: Option<usize>,

    /// Write the full report here and print only the summary.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct BasisArgs {
    /// Local dimension d ≥ 2.
    #[arg(long)]
    pub dim: Option<usize>,
}
