use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root datum {family}{rank}")]
    UnsupportedDatum { family: String, rank: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("weights belong to different root data")]
    DatumMismatch,
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{what} exceeds cap {limit}")]
    CapExceeded { what: String, limit: usize },
    #[error("no closed formula for {0}")]
    UnsupportedFormula(String),
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("not a character: negative multiplicity at {0}")]
    NotACharacter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
