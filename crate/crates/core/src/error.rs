use thiserror::Error;

/// Errors raised by tensor construction, generators, kernels and classification.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid shape: {0}")]
    Shape(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("tensor shapes differ: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),

    #[error("non-finite entry at linear position {0}")]
    NonFinite(usize),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("tensor is not symmetric (entries {0:?} and {1:?} differ)")]
    NotSymmetric(Vec<usize>, Vec<usize>),

    #[error("matrix is not symmetric at ({0}, {1})")]
    MatrixNotSymmetric(usize, usize),

    #[error("unsupported order {order}: {reason}")]
    UnsupportedOrder { order: usize, reason: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("zero vector")]
    ZeroVector,

    #[error("negative entry {value} at {location}")]
    NegativeEntry { location: String, value: f64 },

    #[error("slice {slice} is not positive semi-definite (eigenvalue {eigenvalue})")]
    NotPsd { slice: usize, eigenvalue: f64 },

    #[error("factors do not reproduce the tensor (max deviation {0})")]
    FactorMismatch(f64),

    #[error("generating vector does not reproduce the tensor (max deviation {0})")]
    HankelMismatch(f64),

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
