use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("defining polynomial {0} is not monic")]
    NotMonic(String),
    #[error("defining polynomial must have degree >= 1, got {0}")]
    BadDegree(String),
    #[error("polynomial {poly} is not irreducible: {detail}")]
    NotIrreducible { poly: String, detail: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("requested enclosure not reached within the {cap}-bit precision cap")]
    PrecisionCapExceeded { cap: u32 },
    #[error("operation is undefined for the zero element")]
    ZeroElement,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("all terms cancel; the recurrence is empty")]
    EmptyRecurrence,
    #[error("term index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("subset enumeration over {k} terms exceeds the cap of {cap}")]
    SubsetCapExceeded { k: usize, cap: usize },
    #[error("base {base} is not an algebraic integer (minimal polynomial {minpoly})")]
    NotAlgebraicInteger { base: String, minpoly: String },
    #[error("A = 1: every conjugate of every base lies on the unit circle, epsilon' is undefined")]
    DegenerateA,
    #[error("the lattice point must be non-zero")]
    ZeroPoint,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }
}
