use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is too large (must be below 2^62)")]
    ModulusTooLarge(u64),

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    /// `t_k` is not a unit in the requested domain, so `A` has no inverse there.
    #[error("companion matrix is not invertible over {domain}: {reason}")]
    NotInvertible { domain: String, reason: String },

    #[error("invalid core polynomial: {0}")]
    InvalidCore(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ring has {size} elements, over the enumeration budget of {budget}")]
    BudgetExceeded { size: u128, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
