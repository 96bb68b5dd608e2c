use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("singular time t={t}: within tolerance of n*pi/lambda for lambda={lambda}")]
    SingularTime { t: f64, lambda: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge: spread {spread:e} exceeds {tolerance:e}")]
    NonConvergence { spread: f64, tolerance: f64 },
    #[error("quadrature poisoned by {count} non-finite integrand values")]
    NonFinite { count: usize },
    #[error("quadrature dimension {dim} exceeds ceiling {max}")]
    DimensionCeiling { dim: usize, max: usize },
    #[error("quadrature rule has {nodes} nodes, above the limit {max}")]
    TooManyNodes { nodes: u128, max: u128 },
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
