use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    #[error("degenerate point set: affine rank {rank} is below ambient dimension {dim}")]
    Degenerate { rank: usize, dim: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("no Boundary/Interior transition found for k = {k}")]
    TransitionNotFound { k: usize },

    #[error("evidence contradicts the predicted verdict at arc {arc}: predicted {predicted}, {detail}")]
    Contradiction {
        arc: f64,
        predicted: &'static str,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
