use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("pole: denominator vanishes at q = {0}")]
    Pole(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("extension is not Galois: {0}")]
    NotGalois(String),
    #[error("no admissible beta with coefficients bounded by {bound}")]
    BetaSearchFailed { bound: i64 },
    #[error("enumeration budget of {budget} elements exceeded (needed {needed})")]
    BudgetExceeded { budget: usize, needed: u128 },
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("non-invertible matrix")]
    Singular,
    #[error("character is not well defined: {0}")]
    IllDefined(String),
    #[error("intertwiner system failed: {0}")]
    Intertwiner(String),
    #[error("theta is not generic: {0}")]
    NotGeneric(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("non-integral value {0}")]
    NonIntegral(String),
    #[error("centralizer is not finite: {0}")]
    UnboundedCentralizer(String),
}

pub type Result<T> = std::result::Result<T, Error>;
