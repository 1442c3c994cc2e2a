use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A registry document could not be parsed.
    #[error("line {line}: field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error("invalid registry: {0}")]
    Validation(String),

    /// An argument outside the domain of a formula.
    #[error("{0}")]
    Domain(String),

    #[error("distance unresolvable for `{code}`: {reason}")]
    DistanceUnresolvable { code: String, reason: String },

    /// One or more candidates cannot be scored; no partial ranking is returned.
    #[error("cannot score candidates: {}", .problems.join("; "))]
    Unscorable { problems: Vec<String> },

    #[error("no candidate languages to rank")]
    NoCandidates,

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("line count mismatch: {} has {} lines, {} has {} lines", .left.display(), .left_lines, .right.display(), .right_lines)]
    LineCountMismatch {
        left: PathBuf,
        left_lines: usize,
        right: PathBuf,
        right_lines: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, field: &str, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            field: field.to_string(),
            message: message.into(),
        }
    }
}
