use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bracket index ({i}, {j}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },
    #[error("bracket pair ({i}, {j}) must satisfy i < j")]
    UnorderedPair { i: usize, j: usize },
    #[error("duplicate bracket pair ({i}, {j})")]
    DuplicatePair { i: usize, j: usize },
    #[error("expected vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("unsupported dimension {0} (expected {1})")]
    UnsupportedDimension(usize, &'static str),
    #[error("matrix is singular (|det| = {0:e})")]
    Singular(f64),
    #[error("metric is not symmetric (max asymmetry {0:e})")]
    Asymmetric(f64),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("Jacobi identity fails (residual {0:e})")]
    Jacobi(f64),
    #[error("spanning vectors are linearly dependent")]
    DependentSpan,
    #[error("presentation is not isotropic for this metric: {0}")]
    NotIsotropic(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("sign pattern mismatch: representation {rep:?}, frame {frame:?}")]
    PatternMismatch { rep: Vec<i8>, frame: Vec<i8> },
    #[error("bad multi-index {0:?}")]
    BadMultiIndex(Vec<usize>),
    #[error("metric is not Lorentzian: {0}")]
    NotLorentzian(String),
    #[error("unknown catalog entry '{0}'")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
