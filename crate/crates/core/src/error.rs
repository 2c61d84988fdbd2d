use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic two is not supported (the Jordan product needs 1/2)")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree {0} is unsupported (expected 1 or 2)")]
    UnsupportedDegree(u32),
    #[error("field of order {order} exceeds the supported maximum {max}")]
    FieldTooLarge { order: u64, max: u64 },
    #[error("coordinate {value} is out of range for modulus {p}")]
    CoordinateOutOfRange { value: u64, p: u32 },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("the given subspaces do not form a direct sum decomposition: {0}")]
    NotDirectSum(String),
    #[error("subspace is not closed under the {product} product: {x} * {y} leaves the span")]
    NotClosed {
        product: String,
        x: String,
        y: String,
    },
    #[error("unknown catalog name `{0}`")]
    UnknownCatalogName(String),
    #[error("invalid catalog parameters: {0}")]
    CatalogParams(String),
    #[error("invalid automorphism parameter: {0}")]
    AutomorphismParam(String),
    #[error("search budget of {budget} nodes exceeded ({what})")]
    BudgetExceeded { budget: u64, what: String },
    #[error("invalid search options: {0}")]
    InvalidOptions(String),
    #[error("inconsistent ansatz: {0}")]
    InconsistentAnsatz(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
