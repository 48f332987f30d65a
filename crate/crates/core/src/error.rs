use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NonHermitian { deviation: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("local dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("operation requires d1 = d2, got {d1}x{d2}")]
    UnequalDims { d1: usize, d2: usize },

    #[error("expected a {expected_a}x{expected_b} state, got {found_a}x{found_b}")]
    WrongDimension {
        expected_a: usize,
        expected_b: usize,
        found_a: usize,
        found_b: usize,
    },

    #[error("variant B_side needs d1 = d2, got {d1}x{d2}")]
    VariantUnavailable { d1: usize, d2: usize },

    #[error("Bloch length {norm_sq} exceeds the bound {bound}")]
    NormViolation { norm_sq: f64, bound: f64 },

    #[error("eigendecomposition did not converge")]
    EigenNoConvergence,

    #[error("no oracle restart converged within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("rank {rank} is outside 1..={max}")]
    BadRank { rank: usize, max: usize },

    #[error("unknown family '{0}'")]
    UnknownFamily(String),

    #[error("missing parameter '{0}'")]
    MissingParam(String),

    #[error("unexpected parameter '{0}'")]
    UnexpectedParam(String),

    #[error("parameter {name} = {value} lies outside {interval}")]
    ParamOutOfRange {
        name: String,
        value: f64,
        interval: String,
    },

    #[error("weights must be non-negative, got {0}")]
    NegativeWeight(f64),

    #[error("probabilities sum to {0}, expected 1")]
    BadProbabilities(f64),

    #[error("shield state {index}: {source}")]
    InvalidShield { index: usize, source: Box<Error> },

    #[error("trace-norm equalities fail: |σ0+σ1| = {sum01}, |σ0-σ1| = {diff01}, |σ2+σ3| = {sum23}, |σ2-σ3| = {diff23}")]
    O4Violated {
        sum01: f64,
        diff01: f64,
        sum23: f64,
        diff23: f64,
    },

    #[error("witness is not classical-quantum (discord {discord:.3e})")]
    NotClassical { discord: f64 },

    #[error("value {0} lies outside [0, 1]")]
    OutOfRange(f64),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("malformed matrix data: {0}")]
    MalformedMatrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;
