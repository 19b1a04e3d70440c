use thiserror::Error;

/// Errors produced by the analysis library and its JSON front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("eigen-solver did not converge after {sweeps} sweeps")]
    SolverFailure { sweeps: usize },

    #[error("{operation} is not supported for the {cone} cone")]
    UnsupportedCone {
        operation: &'static str,
        cone: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("sampling budget of {budget} draws exhausted ({what})")]
    SamplingExhausted { budget: usize, what: String },

    #[error("degenerate geodesic: endpoints coincide or are antipodal")]
    DegenerateGeodesic,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
