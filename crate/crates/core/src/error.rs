use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("order {order} exceeds element limit {limit}")]
    LimitExceeded { order: u128, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("elements belong to different groups or spaces")]
    Mismatch,
    #[error("set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("matrix is singular")]
    Singular,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
