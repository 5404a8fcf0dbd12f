use thiserror::Error;

use crate::tensor::Label;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(Label),

    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(Label),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("operator has not passed unitarity verification")]
    UnverifiedOperator,

    #[error("operator failed unitarity check (max defect {0:.3e})")]
    NotUnitary(f64),

    #[error("qudit dimension must be even and at least 2, got {0}")]
    OddDimension(usize),

    #[error("asymmetry parameter must lie in [0, 1], got {0}")]
    InvalidAsymmetry(f64),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("density matrix validation failed: {0}")]
    InvalidDensityMatrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;
