use thiserror::Error;

use crate::freealg::{Gen, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parameter q{0} missing from assignment")]
    MissingParameter(usize),
    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,
    #[error("generator x{0} has no assigned value")]
    MissingGenerator(Gen),
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not multihomogeneous: {0} and {1} have different multidegrees")]
    NotMultihomogeneous(Word, Word),
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeTooHigh { degree: usize, cap: usize },
    #[error("index e{index} out of range for dimension {k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("Gram value q{0} is zero; the form must be non-degenerate")]
    DegenerateForm(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("inconsistent variable usage: {0}")]
    InconsistentVariables(String),
    #[error("Lemma 3 violated: no factorization through the standard polynomial found")]
    FactorizationNotFound,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
