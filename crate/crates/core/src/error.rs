use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("product of two extended elements is not representable")]
    ExtendedProduct,

    #[error("parameter r = {0} must lie strictly between 0 and 1")]
    WeightOutOfRange(String),

    #[error("commutator left affine growth in grade {grade}")]
    ResidualGrowth { grade: i64 },

    #[error("operation requires a {expected} implementation")]
    KindMismatch { expected: &'static str },

    #[error("mass parameter m^2 = {0} must be positive")]
    NonPositiveMass(f64),

    #[error("vector is not supported in the positive half-space (entry at n={n}, k={k})")]
    NotInPositiveHalf { n: i64, k: i64 },

    #[error("beta is not strictly positive: {0}")]
    NotPositive(String),

    #[error("window exhausted in sector {sector} at half-width {half_width}")]
    WindowExhausted { sector: i64, half_width: i64 },

    #[error("matrix is not positive definite (pivot {pivot} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },

    #[error("invalid literal: {0}")]
    Literal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
