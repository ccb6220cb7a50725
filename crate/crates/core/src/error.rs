use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Variant names follow the per-operation error
/// contracts; the payloads carry enough context to re-plan a run.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("boxes are not congruent")]
    NotCongruent,

    #[error("dilation factor must be positive")]
    InvalidFactor,

    #[error("enumeration budget exceeded: {count} boxes would be produced")]
    EnumerationBudget { count: u128 },

    #[error("word contains a digit outside the retained set")]
    InvalidWord,

    #[error("invalid system description: {0}")]
    InvalidSpec(String),

    #[error("zero mass in a denominator: {0}")]
    DegenerateMass(String),

    #[error("measure factors must be one-dimensional (got dimension {0})")]
    InvalidFactorDimension(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("iterative solver failed to reach tolerance after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("internal consistency failure: {0}")]
    DisjointnessViolation(String),
}
