use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    PoleAtPoint(String),
    #[error("denominator vanishes at q = 1")]
    PoleAtOne,
    #[error("q-polynomial has nonzero constant coefficient and is not divisible by q^X")]
    NonDivisible,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("need at least {needed} values, got {got}")]
    InsufficientValues { needed: usize, got: usize },
    #[error("series requires |q| < 1, got q = {0}")]
    InvalidQ(String),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}
