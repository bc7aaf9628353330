use thiserror::Error;

use crate::hom::HomFailure;
use crate::ring::AxiomFailure;
use crate::semidirect::ActionViolation;

pub type Result<T, E = FinringError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinringError {
    /// Table dimensions or entries are out of range. Distinct from an axiom failure.
    #[error("malformed tables: {0}")]
    Structural(String),
    #[error("ring axiom violated: {0}")]
    Axiom(AxiomFailure),
    #[error("order {order} exceeds the order cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} requires a unital ring")]
    NotUnital(String),
    #[error("not a field: {0}")]
    NotField(String),
    #[error("not an ideal: {0}")]
    NotIdeal(String),
    #[error("action pair rejected: {0}")]
    Action(ActionViolation),
    #[error("homomorphism check failed: {0}")]
    Hom(HomFailure),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid document: {0}")]
    Document(String),
}
