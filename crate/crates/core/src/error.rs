use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {point:?} lies outside the domain of `{field}`")]
    DomainViolation { field: String, point: Vec<f64> },
    #[error("non-finite value encountered while evaluating `{0}`")]
    Overflow(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0} has no exact square root in the Gaussian rationals")]
    NotExactlyRepresentable(String),
    #[error("degenerate parameters: b1^2 + b2^2 = 0")]
    DegenerateParameters,
    #[error("quintuple violates the quadric constraints (residuals {0:?})")]
    ConstraintViolation([f64; 3]),

    #[error("coefficient vector is not isotropic: sum c_k^2 = {0}")]
    NotIsotropic(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("polynomials are linearly dependent")]
    LinearlyDependent,
    #[error("functions do not form an eigenfamily: {0}")]
    NotEigenfamily(String),
    #[error("map `{0}` is not homogeneous of degree zero")]
    NotHomogeneousDegreeZero(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("fiber value alpha must be non-zero")]
    AlphaZero,
    #[error("Gauss-Newton did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("converged to a critical point (smallest singular value {0:e})")]
    ConvergedToCritical(f64),
    #[error("residual Jacobian is rank deficient (smallest singular value {0:e})")]
    RankDeficient(f64),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("exact mode is unavailable for `{0}`")]
    ExactModeUnavailable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
