use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),
    #[error("invalid sort transition: {0}")]
    InvalidTransition(String),
    #[error("ideal too small: noncancellative product {0} is missing")]
    IdealTooSmall(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("cannot enumerate: {0}")]
    Infinite(String),
    #[error("already pointed: {0}")]
    AlreadyPointed(String),
    #[error("not uniform: {0}")]
    NotUniform(String),
    #[error("not dominated: {0}")]
    NotDominated(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("zero series has no valuation")]
    ZeroSeries,
    #[error("not a root: {0}")]
    NotARoot(String),
}
