use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A record or row failed to parse. `line` is 1-based.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate {kind} id `{id}` (line {line})")]
    DuplicateId {
        kind: &'static str,
        id: String,
        line: usize,
    },

    #[error("reviewer `{0}` has no publications to build a profile from")]
    NoProfileMaterial(String),

    #[error("publication `{pub_id}` does not list reviewer `{reviewer_id}`")]
    NotAnAuthor { pub_id: String, reviewer_id: String },

    #[error("empty document")]
    EmptyDocument,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("topic column {0} has zero norm")]
    ZeroColumn(usize),

    #[error("word vector is not unit norm (norm = {0})")]
    NotUnitNorm(f64),

    #[error("empty vocabulary: no word reaches min_count {0}")]
    EmptyVocabulary(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("score for reviewer `{0}` is NaN")]
    NanScore(String),

    #[error("missing {kind} for judged ids: {}", ids.join(", "))]
    MissingJudged { kind: &'static str, ids: Vec<String> },

    #[error("unknown {kind} `{id}`")]
    UnknownId { kind: &'static str, id: String },

    #[error("{0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// Process exit code for this error: 2 for bad input or usage, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 1,
            _ => 2,
        }
    }
}
