use crate::qtorus::Vid;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("operands live in different reference tori ({0} vs {1})")]
    TorusMismatch(u64, u64),
    #[error("division is not exact")]
    Inexact,
    #[error("division by zero")]
    DivByZero,
    #[error("element is not pointed")]
    NotPointed,
    #[error("leading coefficient {0} is not a unit")]
    NotNormalizable(String),
    #[error("exchange matrix is not of full column rank")]
    NotInjective,
    #[error("vertex {0} is frozen")]
    Frozen(Vid),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vid),
    #[error("element is not in the span of the standard basis")]
    NotInSpan,
    #[error("no compatible quantization found")]
    NoSolution,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("solution is not integral: {0}")]
    NonIntegral(String),
    #[error("context too small: {0}")]
    ContextTooSmall(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type QResult<T> = Result<T, QError>;
