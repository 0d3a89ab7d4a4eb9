use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("element {index} out of range for ground set of size {size}")]
    OutOfRange { index: usize, size: usize },

    #[error("malformed group action: {0}")]
    MalformedAction(String),

    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("invalid pitch class set: {0}")]
    InvalidPitchClassSet(String),

    #[error("edo {edo} outside supported range 1..={max}")]
    EdoOutOfRange { edo: usize, max: usize },

    #[error("edo mismatch: {left} vs {right}")]
    EdoMismatch { left: usize, right: usize },

    #[error("invalid timbral vector: {0}")]
    InvalidTimbre(String),

    #[error("invalid order matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },

    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
