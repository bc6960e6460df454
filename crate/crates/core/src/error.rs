use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid descriptor: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{system} lacks capability `{flag}` required by `{operation}`")]
    Capability {
        system: String,
        operation: String,
        flag: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration of {estimate} descriptors exceeds the ceiling of {ceiling}")]
    CeilingExceeded { estimate: u128, ceiling: u64 },

    /// An internal consistency check failed. Always a bug, never a user error.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("report validation failed: {0}")]
    Report(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
