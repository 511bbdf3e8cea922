use thiserror::Error;

use crate::crowned::Clause;

/// Errors raised by the frog-process library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrogError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("letter {letter} is outside the alphabet 1..={sigma}")]
    LetterOutOfRange { letter: u32, sigma: u32 },

    #[error("{what} = {value} is out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("not a crowned-frog arrangement: clause ({0}) fails")]
    InvalidCrowned(Clause),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("stationary system is degenerate: solution space has dimension {dimension}")]
    Degenerate { dimension: usize },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = FrogError> = std::result::Result<T, E>;

pub(crate) fn out_of_range(what: &'static str, value: i64, range: impl Into<String>) -> FrogError {
    FrogError::OutOfRange {
        what,
        value,
        range: range.into(),
    }
}
