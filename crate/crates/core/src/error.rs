use thiserror::Error;

/// Errors raised by group construction, enumeration and the counting routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("rank too small for {family}: got {rank}, need at least {min}")]
    RankTooSmall {
        family: &'static str,
        rank: usize,
        min: usize,
    },
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),
    #[error("group order {order} exceeds the enumeration budget {budget}")]
    BudgetExceeded { order: String, budget: String },
    #[error("element does not belong to the group")]
    ForeignElement,
    #[error("element has reflection length {0}, expected 2")]
    NotLengthTwo(usize),
    #[error("element is not below the Coxeter element")]
    NotInNc,
    #[error("non-integer result: {0}")]
    NonIntegerResult(String),
    #[error("index {index} out of range for a factorization with {len} factors")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("no table row for {0}")]
    NoTableRow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
