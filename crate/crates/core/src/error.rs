use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("enumeration of {count} paths exceeds the cap of {cap}; use the closed form")]
    CapExceeded { count: u128, cap: u128 },
    #[error("invalid box: {0}")]
    InvalidBox(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inconsistent query: {0}")]
    InconsistentQuery(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
