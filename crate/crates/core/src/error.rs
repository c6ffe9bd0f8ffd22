use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter is not generic enough: P_{stage}(tau) = 0 ({context})")]
    GenericityViolation { stage: usize, context: String },

    #[error("{points} boundary points exceed the configured bound {bound}")]
    BoundExceeded { points: usize, bound: usize },

    #[error("seam mismatch: {0}")]
    SeamMismatch(String),

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("index {index} out of range {range}")]
    IndexOutOfRange { index: usize, range: String },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("element is not a self-adjoint idempotent: {0}")]
    NotIdempotent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn shape(expected: impl std::fmt::Display, found: impl std::fmt::Display) -> Self {
        Error::ShapeMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
