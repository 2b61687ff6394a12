use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit {0} appears more than once in the target list")]
    DuplicateTarget(usize),

    #[error("index {index} out of range (must be < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("indices must differ, both are {0}")]
    EqualIndices(usize),

    #[error("gate arity {found} not accepted here (expected {expected})")]
    BadArity { expected: usize, found: usize },

    #[error("register size {n} outside supported range [{min}, {max}]")]
    SizeOutOfRange { n: usize, min: usize, max: usize },

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("amplitudes sum to the zero vector")]
    ZeroVector,

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("invalid eigenvalue pair: {0}")]
    InvalidEigenPair(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("duration must be positive, got {0}")]
    NonpositiveDuration(f64),

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("unsupported format {0:?}")]
    UnsupportedFormat(String),

    #[error("invalid config field `{field}`: {message}")]
    ConfigInvalid { field: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by user input rather than by the library.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::Json(_) | Error::NotUnitary { .. })
    }
}
