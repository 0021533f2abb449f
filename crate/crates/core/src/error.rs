use core::fmt;

/// Errors raised by the algebraic layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u32),
    NoModulusKnown { q: u32, e: u32 },
    NotIrreducible,
    /// The field order does not fit the packed element representation.
    FieldTooLarge { q: u32, e: u32 },
    NotASubfield { sub: u32, ext: u32 },
    FieldMismatch,
    InvalidElement(u64),
    StrideViolation { index: usize, stride: usize },
    BudgetExceeded { needed: u128, budget: u128 },
    ZeroShift,
    AmbientMismatch,
    DivisibilityViolation(&'static str),
    ParamMismatch(&'static str),
    BadDimension(&'static str),
    DegreeTooHigh { q_degree: usize, k: usize },
    ContextMismatch,
    TooManyPunctures { s: usize, limit: usize },
    NegativeDiscriminant,
    RadiusTooLarge { tau: u32, d: u32 },
    NoValidRadius,
    ConstraintViolation(&'static str),
    BadParameters(&'static str),
    ShapeMismatch,
    /// Two routes that must agree produced different answers.
    Inconsistent(&'static str),
    Parse { line: usize, msg: &'static str },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(q) => write!(f, "{q} is not prime"),
            Error::NoModulusKnown { q, e } => {
                write!(f, "no irreducible modulus known for GF({q}^{e})")
            }
            Error::NotIrreducible => write!(f, "modulus is not irreducible"),
            Error::FieldTooLarge { q, e } => write!(f, "GF({q}^{e}) does not fit in 64 bits"),
            Error::NotASubfield { sub, ext } => {
                write!(f, "extension degree {sub} does not divide {ext}")
            }
            Error::FieldMismatch => write!(f, "operands live in different fields"),
            Error::InvalidElement(s) => write!(f, "serial {s} is not a field element"),
            Error::StrideViolation { index, stride } => {
                write!(f, "nonzero coefficient at index {index} not divisible by {stride}")
            }
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "enumeration of {needed} items exceeds budget {budget}")
            }
            Error::ZeroShift => write!(f, "cyclic shift by zero"),
            Error::AmbientMismatch => write!(f, "subspaces live in different ambient spaces"),
            Error::DivisibilityViolation(what) => write!(f, "divisibility violated: {what}"),
            Error::ParamMismatch(what) => write!(f, "parameter mismatch: {what}"),
            Error::BadDimension(what) => write!(f, "bad dimension: {what}"),
            Error::DegreeTooHigh { q_degree, k } => {
                write!(f, "message q-degree {q_degree} is not below k = {k}")
            }
            Error::ContextMismatch => write!(f, "words belong to different codes"),
            Error::TooManyPunctures { s, limit } => {
                write!(f, "cannot puncture {s} positions, at most {limit} allowed")
            }
            Error::NegativeDiscriminant => write!(f, "negative discriminant"),
            Error::RadiusTooLarge { tau, d } => {
                write!(f, "radius {tau} is not below the minimum distance {d}")
            }
            Error::NoValidRadius => write!(f, "no admissible radius for these parameters"),
            Error::ConstraintViolation(what) => write!(f, "constraint violated: {what}"),
            Error::BadParameters(what) => write!(f, "bad parameters: {what}"),
            Error::ShapeMismatch => write!(f, "matrix shapes do not match"),
            Error::Inconsistent(what) => write!(f, "internal cross-check failed: {what}"),
            Error::Parse { line, msg } => write!(f, "line {line}: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
