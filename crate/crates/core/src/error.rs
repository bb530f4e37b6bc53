//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("digit {0} is not in {{0, 1, 2}}")]
    InvalidDigit(u8),

    #[error("value {0} lies outside [0, 1]")]
    OutOfUnitInterval(String),

    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("coordinate index {index} out of range 1..={dim}")]
    CoordinateOutOfRange { index: usize, dim: usize },

    #[error("depth {depth} too small; at least {required} columns are needed")]
    DepthTooSmall { depth: usize, required: usize },

    #[error("{0} has no second ternary representation")]
    NoAlternateRepresentation(String),

    #[error("expected {expected} coordinate rows, got {found}")]
    RowCount { expected: usize, found: usize },

    #[error("key index {index} does not fit below 3^{digits}")]
    KeyOutOfRange { index: String, digits: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("grid of {required} cells exceeds the limit of {limit} cells")]
    ResourceLimit { required: u128, limit: u64 },
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_owned(),
            reason: reason.into(),
        }
    }
}
