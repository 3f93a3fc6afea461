//! Crate-wide error type.
//!
//! Variants separate configuration problems (bad JSON, unknown names) from
//! mathematical precondition violations (step size past the stability limit,
//! non-smooth generator passed to a curvature-based estimator) and from plain
//! I/O failures, so the command-line layer can map them to distinct exit codes.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown phi generator `{0}`")]
    UnknownPhi(String),

    #[error("{op} requires a smooth generator, got `{name}`")]
    NonSmoothPhi { op: &'static str, name: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("step size eta = {eta} exceeds the stability limit 1/L = {limit}")]
    StepSizeExceedsStability { eta: f64, limit: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("empty sample collection")]
    EmptySample,

    #[error("weights sum to {sum}, expected 1 within 1e-12")]
    WeightsNotNormalized { sum: f64 },

    #[error("unsupported divergence computation: {0}")]
    Unsupported(String),

    #[error("optimizer stalled after {iterations} iterations (gradient norm {grad_norm:e})")]
    OptimizerStalled { iterations: u64, grad_norm: f64 },

    #[error("rejection sampler exhausted its proposal budget of {budget}")]
    ProposalBudgetExhausted { budget: u64 },

    #[error("fitted per-step factor {factor} is not a contraction")]
    NonContractive { factor: f64 },

    #[error("rate fit window holds {points} points, need at least 3")]
    WindowTooSmall { points: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end: 2 for
    /// configuration and parse errors, 3 for violated mathematical
    /// preconditions, 4 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnknownPhi(_) | Error::Config(_) | Error::Json(_) => 2,
            Error::Io(_) => 4,
            _ => 3,
        }
    }
}
