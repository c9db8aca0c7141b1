use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field or extension of size {0} exceeds the 2^20 limit")]
    TooLarge(u64),
    #[error("GL_{n}(F_{q}) is outside the envelope: {reason}")]
    EnvelopeExceeded { n: usize, q: u32, reason: String },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("matrix is not upper unitriangular")]
    NotUnipotent,
    #[error("expected an integer, got {0}")]
    NonIntegral(f64),
    #[error("composition {parts:?} does not match the inputs: {reason}")]
    CompositionMismatch { parts: Vec<usize>, reason: String },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("ambiguous cuspidal orbit for {0}")]
    Ambiguous(String),
    #[error("representation {0} is not generic")]
    NotGeneric(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no Frobenius orbit identified for {0}")]
    OrbitUnidentified(String),
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("character table construction failed: {0}")]
    DixonFailure(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
