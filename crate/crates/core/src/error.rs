use num_bigint::BigUint;
use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {order} exceeds the configured maximum {cap}")]
    OrderTooLarge { order: BigUint, cap: u64 },
    #[error("element index {index} out of range for field of order {order}")]
    ElementOutOfRange { index: u64, order: u64 },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("enumeration needs {needed} items but the budget is {budget}")]
    BudgetExceeded { needed: BigUint, budget: u64 },
    #[error("invalid chain profile: {0}")]
    InvalidProfile(String),
    #[error("invalid intersection configuration: {0}")]
    InvalidIntersection(String),
    #[error("invalid construction parameters: {0}")]
    InvalidSpec(String),
    #[error("parameters exceed the supported range: {0}")]
    Overflow(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
