use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("quotient is not integral in O_p")]
    NotDivisible,
    #[error("dimension {dim} exceeds cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("matrix is not nilpotent of order p")]
    NotNilpotent,
    #[error("endomorphism does not commute with the group action")]
    NotEquivariant,
    #[error("zero object")]
    ZeroObject,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
