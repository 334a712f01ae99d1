use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid map parameters: {0}")]
    InvalidSpec(String),

    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("domain violation: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
