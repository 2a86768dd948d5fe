use thiserror::Error;

/// Errors raised by the qudit routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 2 (got {0})")]
    DimensionTooSmall(usize),

    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::tolerance::MAX_DIM)]
    DimensionTooLarge(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not square ({rows} rows, row of length {cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite value in input")]
    NonFinite,

    #[error("logarithm requested of a matrix with eigenvalue {eigenvalue:.3e}")]
    LogDomain { eigenvalue: f64 },

    #[error("state is not admissible (smallest eigenvalue {min_eigenvalue:.3e})")]
    Inadmissible { min_eigenvalue: f64 },

    #[error("invalid purity constants: {0}")]
    InvalidConstants(String),

    #[error("purity constants are infeasible for dimension {dim}")]
    Infeasible { dim: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("no extremal solution found after {starts} starts (best residual {best_residual:.3e})")]
    SolverFailure { starts: usize, best_residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
