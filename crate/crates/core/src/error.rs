use thiserror::Error;

/// Failure modes shared by every stage of the pipeline.
///
/// Each variant maps onto a stable machine-readable code and a process exit
/// status so that the command-line driver can surface upstream errors as is.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Precision(_) => "PRECISION",
            Error::Parse { .. } => "PARSE",
            Error::Precondition(_) => "PRECONDITION",
            Error::InternalMismatch(_) => "INTERNAL_MISMATCH",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Precision(_) => 3,
            Error::Precondition(_) => 4,
            Error::InternalMismatch(_) => 5,
        }
    }

    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::Precision(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
