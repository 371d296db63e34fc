use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("n must be positive, got {0}")]
    InvalidN(i64),
    #[error("{what}: n = {n} exceeds the configured bound {bound}")]
    BoundExceeded { what: &'static str, n: u32, bound: u32 },
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse { what: &'static str, input: String, reason: String },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("chain map is not closed: {0}")]
    NotClosed(String),
    #[error("unliftable complex: {0}")]
    Unliftable(String),
    #[error("Maurer-Cartan condition fails: {0}")]
    NotMaurerCartan(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
