use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // fields
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic 2 is not supported; q must be odd")]
    EvenCharacteristic,
    #[error("extension degree must be at least 1 (got {0})")]
    BadDegree(u32),
    #[error("field order p^f = {0}^{1} exceeds 2^31")]
    FieldTooLarge(u64, u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid field element: {0}")]
    BadElement(String),
    #[error("F_{big} is not a quadratic extension of F_{small}")]
    WrongExtensionDegree { big: u64, small: u64 },

    // linear algebra
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("order search exceeded budget: {0}")]
    OrderSearchExceeded(String),
    #[error("span is not invariant under the matrix")]
    NotInvariant,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    // forms
    #[error("dimension {0} is not supported here")]
    UnsupportedDimension(usize),
    #[error("reflection center is isotropic")]
    IsotropicCenter,
    #[error("matrix does not preserve the form")]
    NotAnIsometry,
    #[error("enumeration too large: {0}")]
    TooLarge(String),

    // generators
    #[error("n = {n} is unsupported: {reason}")]
    Unsupported { n: usize, reason: String },
    #[error("parameter a must be nonzero")]
    ZeroParameter,
    #[error("no admissible parameter for n = {n}, q = {q}")]
    NoAdmissibleParameter { n: usize, q: u64 },
    #[error("parameter is not admissible: {0}")]
    NotAdmissible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("construction invariant violated: {0}")]
    Construction(String),
    #[error("operation requires a different case: {0}")]
    WrongCase(String),
    #[error("data file corrupted: {0}")]
    Data(String),

    // certification
    #[error("orbit exceeded {0} points")]
    OrbitCap(usize),
    #[error("budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
