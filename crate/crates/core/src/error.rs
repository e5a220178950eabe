use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a positive integer, got {0}")]
    NonPositive(BigInt),

    #[error("{0} is too large for trial-division factorization")]
    TooLarge(BigInt),

    #[error("modulus must be positive, got {0}")]
    BadModulus(BigInt),

    /// The exact division solving a recurrence for its top term left a remainder.
    #[error(
        "integrality violation for {sequence} at n = {n}: remainder {remainder} mod {divisor}"
    )]
    IntegralityViolation {
        sequence: String,
        n: usize,
        remainder: BigInt,
        divisor: BigInt,
    },

    #[error("closed form and recurrence disagree for {sequence} at n = {index}")]
    PrefixMismatch { sequence: String, index: usize },

    #[error("need terms up to index {needed}, only {available} available")]
    InsufficientTerms { needed: usize, available: usize },

    #[error("unknown sequence id `{0}`")]
    UnknownSequence(String),

    #[error("term cache line {line}: {message}")]
    CacheFormat { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
