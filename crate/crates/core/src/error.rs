use thiserror::Error;

/// Maximum symmetric-group size the sieve engines will expand (k! terms).
pub const MAX_SIEVE_K: usize = 8;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("duplicate evaluation point")]
    DuplicateDomainPoint,
    #[error("word is a codeword (distance 0)")]
    IsCodeword,
    #[error("closed form produced a non-integral value: {0}")]
    NonIntegralResult(String),
    #[error("the trivial character has no L-function")]
    TrivialCharacter,
    #[error("root finding failed: reconstruction residual {0:e}")]
    NumericalInstability(f64),
    #[error("sieve over S_{0} not supported (k must be at most {MAX_SIEVE_K})")]
    KTooLarge(usize),
    #[error("instance is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parameter out of range: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable process exit code for the CLI: parse errors 2, budget 3, everything else 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::NotPrime(_) | Error::ReducibleModulus(_) | Error::Range(_) => 2,
            Error::BudgetExceeded { .. } => 3,
            _ => 1,
        }
    }
}

/// Checks an enumeration size against the configured budget.
pub fn check_budget(needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Default enumeration budget (number of items visited by one oracle call).
pub const DEFAULT_BUDGET: u64 = 10_000_000;
