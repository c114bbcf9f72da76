use thiserror::Error;

/// Errors raised by field construction, exact linear algebra and the searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields or are not field elements")]
    FieldMismatch,
    #[error("{sub} is not a subfield of {sup}")]
    NotASubfield { sub: String, sup: String },
    #[error("no root of the defining polynomial found (internal invariant violated)")]
    NoRootFound,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("bad dimension {0}")]
    BadDimension(usize),
    #[error("universal potency exponent overflows u64")]
    ExponentOverflow,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree zero")]
    ZeroDegree,
    #[error("enumeration of {count} objects exceeds the cap {cap}")]
    EnumerationTooLarge { count: u128, cap: u64 },
    #[error("field of order {q} is too small for n = {n} (need q >= n + 1)")]
    FieldTooSmall { q: u64, n: usize },
    #[error("field of order {order} exceeds the field-size cap {cap}")]
    FieldTooLarge { order: u128, cap: u64 },
    #[error("search space of {count} candidates exceeds the brute cap {cap}")]
    SearchSpaceTooLarge { count: u128, cap: u64 },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrices do not commute")]
    NotCommuting,
    #[error("commuting matrix is not a polynomial in the companion (internal invariant violated)")]
    NoPolynomialRepresentation,
    #[error("no potent companion matrix with trace {trace} exists for n = {n}")]
    TraceNotRealizable { trace: u32, n: usize },
    #[error("exponent {0} must be greater than 1")]
    BadExponent(u64),
    #[error("witness failed re-verification (internal invariant violated): {0}")]
    WitnessRejected(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
