use thiserror::Error;

/// Broad classification of an [`Error`], used to pick the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// An argument lies outside the domain of the operation.
    Domain,
    /// Inputs are individually well formed but mutually inconsistent.
    Inconsistent,
    /// Input text or a document could not be parsed.
    Malformed,
    /// Two independent computations disagreed. Indicates a bug.
    Internal,
}

impl ErrorKind {
    /// Process exit code for this kind of failure.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Domain | ErrorKind::Inconsistent => 1,
            ErrorKind::Malformed => 2,
            ErrorKind::Internal => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Domain => "domain",
            ErrorKind::Inconsistent => "inconsistent",
            ErrorKind::Malformed => "malformed",
            ErrorKind::Internal => "internal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    #[error("{a} is not invertible modulo {r}")]
    NotInvertible { a: i64, r: u64 },

    #[error("invalid quotient singularity 1/{r}({a},-{a},1): {reason}")]
    InvalidSingularity { r: u64, a: u64, reason: String },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain { .. }
            | Error::NotInvertible { .. }
            | Error::InvalidSingularity { .. } => ErrorKind::Domain,
            Error::Inconsistent(_) => ErrorKind::Inconsistent,
            Error::Malformed(_) => ErrorKind::Malformed,
            Error::Internal(_) => ErrorKind::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
