use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("grading mismatch: {0}")]
    Grading(String),
    #[error("projection onto a zero generator")]
    ZeroProjection,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structure<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Structure(msg.into()))
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
