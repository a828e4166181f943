use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed line-oriented input (CoNLL or any of the jsonlines formats).
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Well-formed input that violates a document, token or span invariant.
    #[error("document {doc}: {message}")]
    Validation { doc: String, message: String },

    #[error("cannot emit document {doc}: {message}")]
    Emit { doc: String, message: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Fine scores reference an antecedent pair the coarse matrix does not hold.
    #[error("fine score ({i}, {j}) has no coarse counterpart")]
    Support { i: usize, j: usize },

    #[error("token {0} has no word-to-span entry")]
    UnknownWord(usize),

    #[error("head word {0} has no boundary scores")]
    MissingBoundaries(usize),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn validation(doc: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            doc: doc.into(),
            message: message.into(),
        }
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}
