use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid sign rule: {0}")]
    InvalidRule(String),

    #[error("0 is not an element of Z\\{{0}}")]
    ZeroElement,

    #[error("coordinate index must be positive, got {0}")]
    InvalidIndex(i64),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// The oracle violated a property every automorphism must have.
    #[error("malformed oracle: {0}")]
    MalformedOracle(String),

    #[error("representatives {0} and {1} lie in the same connected component")]
    SharedComponent(usize, usize),

    #[error("invalid oracle: {0}")]
    InvalidOracle(String),

    #[error("cube dimension {n} outside supported range {min}..={max}")]
    DimensionOutOfRange { n: usize, min: usize, max: usize },

    #[error("cube map is not induced by a wreath pair: {0}")]
    NotWreathInduced(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
