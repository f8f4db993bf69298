use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range [2, 2^61)")]
    ModulusOutOfRange(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("element {value} is not reduced modulo {q}")]
    ElementOutOfRange { value: u64, q: u64 },
    #[error("generator matrix is rank deficient: rank {found}, expected {expected}")]
    RankDeficient { found: usize, expected: usize },
    #[error("coordinate {index} out of range for length {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("enumeration budget exceeded: {required} evaluations needed, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("repair-set search budget exceeded: {required} steps needed, budget {budget}")]
    SearchBudgetExceeded { required: u128, budget: u128 },
    #[error("certificate does not match: {0}")]
    CertificateMismatch(String),
    #[error("code has no certified locality for r={r}, delta={delta}")]
    NotLocal { r: usize, delta: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("construction failed after {retries} retries: {reason}")]
    ConstructionFailed { retries: usize, reason: String },
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
