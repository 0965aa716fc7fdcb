// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the algebra and invariant routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("strand count {0} is too small, need at least 3")]
    InvalidRank(usize),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("basis mismatch between operands")]
    BasisMismatch,

    #[error("generator index out of range: {index} (allowed 1..={max})")]
    GeneratorOutOfRange { index: i64, max: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("parse error at token {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("hypothesis not satisfied: {0}")]
    Precondition(String),

    #[error("sequence must be nonempty")]
    EmptySequence,
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }

    /// True for malformed textual input, as opposed to violated hypotheses.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
