use thiserror::Error;

/// Errors surfaced by field construction, polynomial parsing, and the
/// counting and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("enumeration budget exceeded: need {needed} iterations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("discriminant vanishes identically (inseparable input)")]
    Inseparable,
}

pub type Result<T> = std::result::Result<T, Error>;
