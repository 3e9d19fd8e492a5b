use thiserror::Error;

/// Errors raised by state construction, tensor operations and detectors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("capacity exceeded: dimension {d}^{n} is above the dense limit of {limit}")]
    Capacity { n: usize, d: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state is not positive semidefinite: {0}")]
    Positivity(String),

    #[error("outside the theorem's domain: {0}")]
    Hypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
