//! Error type shared by all allocation and verification routines.

use thiserror::Error;

/// Errors raised by model construction, allocation, and verification.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument violates a precondition (non-finite, wrong sign, wrong length, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The model cannot carry a budget (for example every incidence coefficient is zero).
    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    /// The requested hypothesis is not defined for this model shape.
    #[error("unsupported hypothesis: {0}")]
    UnsupportedHypothesis(String),

    /// A value lies outside the domain on which the expression is defined.
    #[error("out of domain: {0}")]
    OutOfDomain(String),

    /// The request exceeds the size the routine is prepared to handle exhaustively.
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),
}

impl Error {
    /// Stable machine-readable category name, used by the CLI for exit reporting.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::DegenerateModel(_) => "degenerate-model",
            Error::UnsupportedHypothesis(_) => "unsupported-hypothesis",
            Error::OutOfDomain(_) => "out-of-domain",
            Error::UnsupportedSize(_) => "unsupported-size",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
