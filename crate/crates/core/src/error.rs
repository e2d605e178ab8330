use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid order: n must be at least 1")]
    InvalidOrder,
    #[error("invalid loop: residue {0} is 0 mod n")]
    InvalidLoop(i64),
    #[error("unsupported graph family: {0}")]
    UnsupportedFamily(String),
    #[error("n = {0} is even; the construction requires odd order")]
    ParityUnsupported(usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("coefficient {index} is negative ({value})")]
    NotNonnegative { index: usize, value: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not Hermitian (residual {0})")]
    NotHermitian(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("n = {n} exceeds the search cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
