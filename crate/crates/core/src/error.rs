use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic order must be at least 1")]
    ZeroOrder,
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("{k} is not coprime to {m}")]
    NotCoprime { k: i64, m: usize },
    #[error("element is not in the subfield of order {0}")]
    NotInSubfield(usize),
    #[error("invalid subfield split: {0} does not split {1} into coprime factors")]
    BadSplit(usize, usize),
    #[error("product of conjugates is not a rational integer")]
    NotRational,
    #[error("zero polynomial has no discriminant")]
    ZeroPolynomial,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid period system (p={p}, e={e}): {reason}")]
    InvalidPeriodSystem { p: u64, e: u64, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} does not fit in 128 bits")]
    Overflow(String),
    #[error("catalog line {line}: {reason}")]
    CatalogFormat { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
