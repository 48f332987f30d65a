use std::path::PathBuf;

use geodiscord::Error;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
pub const EXIT_O4: i32 = 4;
pub const EXIT_UNKNOWN_FAMILY: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Dimension(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },

    /// The table is still produced; `output` is what would go to stdout.
    #[error("{failed} of {total} rows failed")]
    RowsFailed {
        failed: usize,
        total: usize,
        code: i32,
        output: String,
    },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => core_exit_code(e),
            CliError::Usage(_) | CliError::Json { .. } => EXIT_VALIDATION,
            CliError::Dimension(_) => EXIT_DIMENSION,
            CliError::Io { .. } => EXIT_OTHER,
            CliError::RowsFailed { code, .. } => *code,
        }
    }
}

pub fn core_exit_code(e: &Error) -> i32 {
    use Error::*;
    match e {
        NonSquare { .. }
        | DimensionMismatch { .. }
        | DimensionTooSmall(_)
        | UnequalDims { .. }
        | WrongDimension { .. }
        | VariantUnavailable { .. } => EXIT_DIMENSION,
        O4Violated { .. } => EXIT_O4,
        UnknownFamily(_) => EXIT_UNKNOWN_FAMILY,
        NonHermitian { .. }
        | TraceNotOne { .. }
        | NotPsd { .. }
        | NormViolation { .. }
        | BadRank { .. }
        | MissingParam(_)
        | UnexpectedParam(_)
        | ParamOutOfRange { .. }
        | NegativeWeight(_)
        | BadProbabilities(_)
        | InvalidShield { .. }
        | NotClassical { .. }
        | OutOfRange(_)
        | MalformedMatrix(_) => EXIT_VALIDATION,
        EigenNoConvergence | NoConvergence { .. } | Inconsistent(_) => EXIT_OTHER,
    }
}
