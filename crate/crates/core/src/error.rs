use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero one is required: {0}")]
    ZeroPolynomial(&'static str),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("degree bound {bound} is smaller than the degree {degree}")]
    DegreeBound { bound: usize, degree: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree {0} is not even")]
    OddDegree(usize),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("operator is not selfadjoint at ({i}{j})({k}{l})")]
    NotSelfadjoint {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
