use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("degree {degree} exceeds the working cap {cap}")]
    CapExceeded { degree: i32, cap: i32 },
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidModel(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
