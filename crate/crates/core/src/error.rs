use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("extended gcd of two zero elements")]
    GcdOfZeros,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("variable universe mismatch")]
    UniverseMismatch,
    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("invalid term order: {0}")]
    InvalidOrder(String),
    #[error("term order does not eliminate the requested variables")]
    NotEliminationOrder,
    #[error("operation requires a field coefficient domain")]
    NotAField,
    #[error("generator is not a monomial: {0}")]
    NotMonomial(String),
    #[error("ideal is not homogeneous for the requested grading")]
    NotHomogeneous,
    #[error("resource cap exceeded: {0}")]
    ResourceCapped(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("degree profile mismatch: {0}")]
    DegreeProfile(String),
    #[error("parameter `{0}` is not covered by the assignment")]
    UncoveredParameter(String),
    #[error("sampling cap exceeded after {attempts} attempts; violated: {violated}")]
    SampleCap { attempts: usize, violated: String },
    #[error("genericity violated, resample: {0}")]
    Genericity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
