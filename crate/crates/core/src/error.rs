use crate::linalg::LinalgError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("index {index} out of range for a {dim}-dimensional algebra (at position {position})")]
    IndexOutOfRange { index: usize, dim: usize, position: usize },

    #[error("d∘d ≠ 0: d(d e^{generator}) = {obstruction}")]
    NotADifferential { generator: usize, obstruction: String },

    #[error("dimension {dim} exceeds the limit of {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },

    #[error("not symplectic: {0}")]
    NotSymplectic(String),

    #[error("k = {k} is out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("degree {degree} is out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("form {0} is not closed")]
    NotClosed(String),

    #[error("no symplectic structure found among the scanned forms")]
    NoSymplecticForm,

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("invalid fixture line {line}: {message}")]
    Fixture { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}
