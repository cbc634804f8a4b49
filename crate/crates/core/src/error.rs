use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("zero pivot at index {index} in LDLT decomposition")]
    ZeroPivot { index: usize },

    #[error("{context}: {value} is not a Laurent polynomial")]
    NotLaurent { context: String, value: String },

    #[error("invalid dimension vector: {0}")]
    InvalidDimVector(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("resource limit: {what} needs {needed} summands, cap is {cap}")]
    ResourceLimit { what: String, needed: u128, cap: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
