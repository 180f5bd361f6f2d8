use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("form is not skew-symmetric")]
    NotSkew,
    #[error("quadratic form coefficient at position {0} is zero")]
    ZeroCoefficient(usize),
    #[error("skew form on an odd-dimensional space ({0}) cannot be nondegenerate")]
    OddSkewDimension(usize),
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("{0} is a square, so it does not define a quadratic field extension")]
    SquareRadicand(String),
    #[error("parameter must be nonzero: {0}")]
    ZeroParameter(&'static str),
    #[error("operation requires a triple system of kind {expected}")]
    WrongProvenance { expected: &'static str },
    #[error("quartic calibration failed: {0}")]
    CalibrationFailed(String),
    #[error("not a right ideal: {0}")]
    NotAnIdeal(String),
    #[error("gift is not split: {0}")]
    NotSplit(&'static str),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
