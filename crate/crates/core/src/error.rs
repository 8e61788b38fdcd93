use thiserror::Error;

/// Reason codes for [`Error::PreconditionFailed`] raised by the `h` elimination calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precondition {
    /// The sequence is shorter than the operation requires.
    Length,
    /// Some interior term does not divide the sum of its neighbours.
    Divisibility,
    /// No maximal term sits at an eligible position.
    MaxPosition,
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Precondition::Length => "length",
            Precondition::Divisibility => "divisibility",
            Precondition::MaxPosition => "max-position",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("continued fraction stream exhausted after {terms} terms")]
    StreamExhausted { terms: usize },

    #[error("floor is ambiguous after refining to {bits} bits")]
    FloorAmbiguous { bits: u64 },

    #[error("comparison is ambiguous after refining to {bits} bits")]
    ComparisonAmbiguous { bits: u64 },

    #[error("slope out of range: leading coefficient must be at least 1")]
    SlopeOutOfRange,

    #[error("point is not in the Farey triangle: {0}")]
    NotInTriangle(String),

    #[error("enumeration budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("singular lattice basis")]
    SingularBasis,

    #[error("precondition failed: {0}")]
    PreconditionFailed(Precondition),

    #[error("slice is not an excursion")]
    NotAnExcursion,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
