use thiserror::Error;

/// Errors raised by field arithmetic, polynomial handling and the
/// interpolation algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u128),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("could not factor {0} within the search budget; supply a primitive element explicitly")]
    FactorizationTimeout(u128),

    #[error("field of size {size} is too small for degree bound {degree} (need size >= degree + 2)")]
    FieldTooSmall { size: u128, degree: u64 },

    #[error("term or degree bound violated: {0}")]
    BoundViolation(String),

    #[error("polynomial does not split into distinct linear factors: {0}")]
    RootFinding(String),

    #[error("no discrete logarithm within [0, {bound}]")]
    DlogNotFound { bound: u64 },

    #[error("duplicate evaluation nodes in Vandermonde system")]
    DuplicateNodes,

    #[error("coefficient outside the base field")]
    NonBaseCoefficient,

    #[error("reduction failure: {found} terms after cyclic reduction exceed the round bound {bound}")]
    ReductionFailure { found: usize, bound: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// True for errors that mean the Monte Carlo algorithm (or a bound it
    /// was given) failed, as opposed to malformed input.
    pub fn is_algorithm_failure(&self) -> bool {
        matches!(
            self,
            Error::BoundViolation(_)
                | Error::RootFinding(_)
                | Error::DlogNotFound { .. }
                | Error::DuplicateNodes
                | Error::NonBaseCoefficient
                | Error::ReductionFailure { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
