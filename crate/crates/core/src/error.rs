use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("component index {index} out of range for a sum of {len} components")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("entry indices must be strictly increasing (saw {previous} then {next})")]
    UnorderedEntries { previous: usize, next: usize },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The operation is undefined at the given input (typically the zero vector).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("extreme points are not enumerable: {0}")]
    NotEnumerable(String),

    #[error("construction failed: {0}")]
    Construction(String),
}

impl Error {
    pub(crate) fn invalid_space(msg: impl Into<String>) -> Self {
        Error::InvalidSpace(msg.into())
    }

    pub(crate) fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::DegenerateInput(msg.into())
    }

    pub(crate) fn not_enumerable(msg: impl Into<String>) -> Self {
        Error::NotEnumerable(msg.into())
    }
}
