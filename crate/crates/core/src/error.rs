//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameters violate a validity predicate (vanishing denominator,
    /// broken boundary condition, out-of-range index, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Structurally degenerate input (constant polynomial, evaluation at a
    /// singular point, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// An iterative solver failed to reach its target accuracy.
    #[error("solver failure: {0}")]
    SolverFailure(String),

    /// Adaptive quadrature could not bound the integrand tail.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        Error::DegenerateInput(msg.into())
    }

    pub fn solver(msg: impl Into<String>) -> Self {
        Error::SolverFailure(msg.into())
    }
}
