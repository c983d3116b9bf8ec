// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),

    #[error("label `{0}` is not in the input alphabet")]
    UnknownLabel(String),

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("word is not well-nested (offset {offset})")]
    NotWellNested { offset: usize },

    #[error("cannot decompose the empty word")]
    EmptyWord,

    #[error("not a binary well-nested word: {reason} (offset {offset})")]
    NotBinary { offset: usize, reason: &'static str },

    #[error("invalid model: {0}")]
    Model(String),

    #[error("output alphabet is not structured")]
    UnstructuredOutput,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("output set exceeds the cap of {cap} words")]
    OutputOverflow { cap: usize },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
