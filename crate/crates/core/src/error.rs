//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("exponent {0} is not representable at root order {1}")]
    UnrepresentableExponent(String, u32),

    #[error("mixed root orders: {0} vs {1}")]
    RootOrderMismatch(u32, u32),

    #[error("inexact division, nonzero remainder: {remainder}")]
    InexactDivision { remainder: String },

    #[error("lattice mismatch")]
    LatticeMismatch,

    #[error("empty support")]
    EmptySupport,

    #[error("{0} is not a (quasi)minuscule vector for this system")]
    NotMinuscule(String),

    #[error("unsupported system: {0}")]
    Unsupported(String),

    #[error("degenerate eigenvalue for weights {0} and {1}")]
    DegenerateEigenvalue(String, String),

    #[error("non-polynomial result, offending denominator: {0}")]
    NonPolynomial(String),

    #[error("operator does not commute with the reference operator")]
    NotCommuting,

    #[error("support did not shrink while peeling; internal inconsistency at {0}")]
    PeelingStuck(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
