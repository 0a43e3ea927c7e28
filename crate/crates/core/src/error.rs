use thiserror::Error;

/// Errors raised by constructors, finders and verifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parity mismatch: n = {n} and k = {k} must have the same parity")]
    ParityMismatch { n: usize, k: usize },

    #[error("degree out of range: {0}")]
    DegreeRange(String),

    #[error("optimization failed: {0}")]
    OptimizationFailed(String),

    #[error("eigenvalue solver did not converge for a degree {0} polynomial")]
    EigenSolver(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("verification failed for piece {index}: clearance {clearance:e}")]
    VerificationFailed { index: usize, clearance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
