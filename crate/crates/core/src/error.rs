use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {p}^{f} exceeds the enumeration bound")]
    FieldTooLarge { p: u64, f: u32 },
    #[error("extension degree {0} is not supported")]
    BadDegree(u32),
    #[error("n = {n} does not divide q - 1 = {qm1}")]
    NDoesNotDivide { n: u64, qm1: u64 },
    #[error("element is not an n-th root of unity (n = {0})")]
    NotRootOfUnity(u64),
    #[error("zero has no inverse")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("element is not a unit (valuation {0})")]
    NotUnit(i64),
    #[error("mismatched {0}")]
    Mismatch(&'static str),
    #[error("map is not bijective")]
    NotBijective,
    #[error("map is not well defined: {0}")]
    IllDefined(String),
    #[error("module with {size} elements exceeds the enumeration bound {bound}")]
    Bound { size: String, bound: u64 },
    #[error("fiber condition violated: {0}")]
    Fiber(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("matrix is singular")]
    Singular,
    #[error("lattice inclusion fails: {0}")]
    NotContained(String),
    #[error("elements do not commute")]
    NotCommuting,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
