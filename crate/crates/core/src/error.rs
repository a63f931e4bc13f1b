use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse `{token}` as a rational number")]
    Parse { token: String },

    #[error("value {value} is outside {range}")]
    Range { value: String, range: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("unsupported size: {0}")]
    Unsupported(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid schedule: {0}")]
    Validation(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("slope fit needs at least 3 points with strictly increasing SNR, got {0}")]
    InsufficientPoints(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
