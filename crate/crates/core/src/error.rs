use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation requires the exact rational backend: {0}")]
    ExactOnly(&'static str),
    #[error("polynomial is not monic: {0}")]
    NotMonic(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("duplicate interpolation node")]
    DuplicateNode,
    #[error("variable tables differ")]
    VariableTableMismatch,
    #[error("genus mismatch: expected {expected}, got {got}")]
    GenusMismatch { expected: usize, got: usize },
    #[error("point does not lie on the fiber")]
    NotOnFiber,
    #[error("factorization required: {0}")]
    MissingFactorization(String),
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
    #[error("search budget exhausted after {budget} candidates: {what}")]
    BudgetExhausted { budget: usize, what: String },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
