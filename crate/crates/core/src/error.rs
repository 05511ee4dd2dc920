//! Error type shared across the crate.

/// Errors produced by solvers, classifiers and data helpers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Operand shapes do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The residual threshold came out as zero, so the sigmoid weight rule
    /// is undefined. Callers fall back to uniform weights.
    #[error("degenerate residual threshold: delta = 0")]
    DegenerateThreshold,

    /// A numerical routine failed (e.g. a factorization on non-finite data).
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// File contents are not the supported binary 8-bit PGM format.
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),

    /// The file claims to be PGM but its contents are inconsistent.
    #[error("malformed image file: {0}")]
    MalformedImage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
