use thiserror::Error;

use crate::scalar::Backend;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("backend mismatch: expected {expected}, found {found}")]
    BackendMismatch { expected: Backend, found: Backend },

    #[error("lattice dimension must be at least 1")]
    ZeroDimension,

    #[error("chiral vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },

    #[error("parameter p must lie in the open interval (0, 1), got {0}")]
    ParameterOutOfRange(String),

    #[error("sqrt(p(1-p)) is irrational for p = {0}; use the float backend")]
    IrrationalParameter(String),

    #[error("coin matrix must be {side}x{side}")]
    CoinShape { side: usize },

    #[error("coin matrix is not unitary (max |A*A - I| entry = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("chiral index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("weight sequence has no nonzero weight")]
    ZeroWeights,

    #[error("measure has zero total mass and cannot be normalized")]
    ZeroMass,

    #[error("measure values must be positive reals")]
    NonPositiveMeasure,

    #[error("operation requires the exact backend")]
    RequiresExact,

    #[error("exponent {0:?} lies outside the unit cube {{-1,0,1}}^d")]
    OutsideBall(Vec<i64>),

    #[error("invalid number {0:?}")]
    Parse(String),

    #[error("malformed document: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
