use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid game parameters: {0}")]
    InvalidParams(String),

    #[error("fraction {0} is outside [0, 1]")]
    FractionOutOfRange(f64),

    #[error("invalid configuration distribution: {0}")]
    InvalidDistribution(#[from] DistributionViolation),

    #[error("lambda is only defined for c > 1 (got c = {0})")]
    LambdaDomain(f64),

    #[error("epsilon must lie in (0, 1), got {0}")]
    EpsilonOutOfRange(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("grid size must be at least 2, got {0}")]
    GridTooSmall(usize),

    #[error("invalid simulation config: {0}")]
    InvalidSimConfig(String),

    #[error("could not write simulation trace: {0}")]
    Trace(String),

    #[error("simulation statistics were produced for a different game or distribution")]
    MismatchedInputs,
}

/// First violated invariant of a candidate configuration distribution.
#[derive(Debug, Clone, PartialEq)]
pub enum DistributionViolation {
    TooFewConfigurations { k: usize },
    FractionOutOfRange { index: usize, x: f64 },
    ProbabilityOutOfRange { index: usize, p: f64 },
    DuplicateConfiguration { first: usize, second: usize, x: f64 },
    ProbabilitiesDoNotSumToOne { sum: f64 },
}

impl fmt::Display for DistributionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooFewConfigurations { k } => {
                write!(f, "need at least 2 configurations, got {k}")
            }
            Self::FractionOutOfRange { index, x } => {
                write!(f, "entry {index}: fraction {x} is outside [0, 1]")
            }
            Self::ProbabilityOutOfRange { index, p } => {
                write!(f, "entry {index}: probability {p} is outside (0, 1)")
            }
            Self::DuplicateConfiguration { first, second, x } => {
                write!(
                    f,
                    "entries {first} and {second} share the configuration x = {x}"
                )
            }
            Self::ProbabilitiesDoNotSumToOne { sum } => {
                write!(f, "probabilities sum to {sum}, not 1")
            }
        }
    }
}

impl std::error::Error for DistributionViolation {}
