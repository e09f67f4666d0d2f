use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Empty input where at least one value is required.
    #[error("input is empty")]
    Empty,

    /// A value that is NaN or infinite.
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("length mismatch: {left} predicted vs {right} observed values")]
    LengthMismatch { left: usize, right: usize },

    /// A precondition on arguments or configuration was violated.
    #[error("invalid input: {0}")]
    Input(String),

    /// The operation is mathematically undefined for this input (e.g. GUM U_A at n = 1).
    #[error("undefined: {0}")]
    Domain(String),

    /// Malformed file content. `line` is 1-based.
    #[error("{path}: line {line}: {msg}")]
    Format {
        path: String,
        line: u64,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A computed result broke one of its own invariants.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error: 1 input/format, 2 I/O, 3 invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            Error::Invariant(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
