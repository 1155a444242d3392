use thiserror::Error;

/// Errors raised by the counting library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported limit of 65536")]
    FieldTooLarge(u64),
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("value {value} is not an element of F_{q}")]
    InvalidElement { value: u64, q: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("constraint windows overlap: {ell} leading + {t} ending > degree {degree}")]
    OverlappingWindows { ell: usize, t: usize, degree: usize },
    #[error("constant term is zero but ending coefficients are prescribed")]
    ZeroConstantTerm,
    #[error("class parameters differ: {0}")]
    ParameterMismatch(String),
    #[error("class label is not an element of the group: {0}")]
    NotInGroup(String),
    #[error("generator override rejected: {0}")]
    InvalidGenerators(String),
    #[error("group of order {0} exceeds the enumeration limit")]
    GroupTooLarge(u64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("integrality check failed: residual {residual:e} exceeds tolerance {tolerance:e}")]
    Integrality { residual: f64, tolerance: f64 },
    #[error("computed count {0} is negative")]
    NegativeCount(i64),
    #[error("q^n = {q}^{n} exceeds the exact floating-point range 2^52")]
    ExactRangeExceeded { q: u32, n: u32 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("search space of {0} candidates exceeds the brute-force limit")]
    SearchSpaceTooLarge(u128),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code: 2 invalid input, 3 integrality, 4 guard or overflow.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Integrality { .. } | Error::NegativeCount(_) => 3,
            Error::ExactRangeExceeded { .. }
            | Error::Overflow(_)
            | Error::SearchSpaceTooLarge(_)
            | Error::GroupTooLarge(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
