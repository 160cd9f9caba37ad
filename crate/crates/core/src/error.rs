use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polynomial is reducible over Q: {0}")]
    Reducible(String),

    #[error("could not decide irreducibility of {0}; pass it as trusted to skip the check")]
    IrreducibilityUndetermined(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("p-adic depth cap {cap} exceeded at p = {p}")]
    DepthCapExceeded { p: u64, cap: u32 },

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
