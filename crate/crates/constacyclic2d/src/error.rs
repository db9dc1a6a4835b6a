//! Crate-wide error type.
//!
//! User-reachable failure modes are `Result`s carrying one of these variants.
//! Violations of internal preconditions (mixing elements of different fields
//! or ambients in low-level arithmetic, out-of-range factor indices) are bugs
//! and panic instead; the CLI maps panics to its own exit code.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("operands belong to different ambient rings")]
    MixedAmbient,
    #[error("factor index out of range")]
    BadIndex,
    #[error("component degree exceeds the ambient bound")]
    DegreeOverflow,
    #[error("codeword does not lie in the requested reduced code")]
    NotInCbar,
    #[error("the zero code has no minimum distance")]
    EmptyCode,
    #[error("work estimate {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
