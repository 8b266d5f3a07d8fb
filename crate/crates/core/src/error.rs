use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    /// A construction would exceed the configured state budget. Raised
    /// instead of returning a truncated (and therefore wrong) automaton.
    #[error("capacity exceeded: {what} needs more than {budget} states")]
    Capacity { what: String, budget: usize },

    #[error("track index {index} out of range for arity {arity}")]
    BadTrack { index: usize, arity: usize },

    #[error("letter map is not total: {0}")]
    PartialMap(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported formula fragment: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("element is zero and has no proper non-zero part")]
    ZeroElement,

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub(crate) fn capacity(what: impl Into<String>, budget: usize) -> Error {
    Error::Capacity {
        what: what.into(),
        budget,
    }
}
