use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("letter {0:?} is not in the morphism's domain")]
    UnknownLetter(char),

    #[error("segment endpoints coincide")]
    DegenerateSegment,

    /// A difference that should be of the form c_m - w*c_{m-1} is not.
    #[error("no (m, w) decomposition of distance {0}")]
    DecompositionFailure(u64),

    #[error("invalid collection: {0}")]
    InvalidCollection(String),

    #[error("invalid edge pair: {0}")]
    InvalidPair(String),

    #[error("cannot reconstruct a collection from pair: {0}")]
    ReconstructionFailure(String),

    #[error("enumeration guard exceeded: {needed} objects, limit {limit}")]
    GuardExceeded { needed: u128, limit: u128 },

    #[error("polynomial division is not exact")]
    NotDivisible,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
