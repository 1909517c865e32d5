use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Structurally invalid input, e.g. a vertex id outside `0..n`.
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A configured size or work budget would be exceeded.
    #[error("capacity exceeded for {what}: {requested} > {limit}")]
    Capacity {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    /// The caller violated an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An internal cross-check failed; indicates an enumeration bug.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag for the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedInput(_) => "malformed-input",
            Error::Parse { .. } => "parse",
            Error::Capacity { .. } => "capacity",
            Error::Contract(_) => "contract",
            Error::Consistency(_) => "consistency",
            Error::Io(_) => "io",
        }
    }

    pub(crate) fn capacity(what: &'static str, requested: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::Capacity {
            what,
            requested: requested.into(),
            limit: limit.into(),
        }
    }
}
