//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by constructors and estimators.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An AR model whose characteristic polynomial has a root on or inside
    /// the unit circle.
    #[error("non-stationary AR model: {0}")]
    NonStationary(String),

    /// A dense-path operation was asked to run above its size cap.
    #[error("{op}: n = {n} exceeds the cap of {cap}; use a structured kernel path")]
    CapacityExceeded { op: &'static str, n: usize, cap: usize },

    /// A numerical procedure failed (singular system, non-convergence, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A file could not be parsed; reports the offending line.
    #[error("parse error in {path} at line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
