use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid register order {0}: must lie in 1..=30")]
    InvalidOrder(usize),

    #[error("index {index} out of range for a register of {len} amplitudes")]
    InvalidIndex { index: usize, len: usize },

    #[error("quantum order r = {order} violates 1 <= r <= N with N = {size}")]
    OrderOutOfRange { order: usize, size: usize },

    #[error("log2 of the quantum factor must be <= 0, got {0}")]
    InvalidLambda(f64),

    #[error("shape mismatch: expected {expected} bits, got {actual}")]
    Shape { expected: usize, actual: usize },

    #[error("problem has no variables")]
    EmptyProblem,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("tuning suite is empty")]
    EmptySuite,

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
