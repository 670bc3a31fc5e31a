use thiserror::Error;

/// A violated metric axiom found while validating a distance matrix.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricViolation {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("nonzero diagonal entry d({i},{i}) = {value}")]
    Diagonal { i: usize, value: f64 },
    #[error("negative or non-finite entry d({i},{j}) = {value}")]
    Negative { i: usize, j: usize, value: f64 },
    #[error("asymmetry d({i},{j}) - d({j},{i}) = {slack}")]
    Asymmetric { i: usize, j: usize, slack: f64 },
    #[error("zero distance between distinct indices {i} and {j}")]
    NotSeparated { i: usize, j: usize },
    #[error("triangle violation d({i},{k}) > d({i},{j}) + d({j},{k}) by {slack}")]
    Triangle { i: usize, j: usize, k: usize, slack: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point with norm {norm} is not inside the open ball of radius {radius}")]
    OutsideBall { norm: f64, radius: f64 },
    #[error("index {index} out of range for a space with {size} points")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("operation needs a geodesic space")]
    NotGeodesic,
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("empty point set")]
    EmptySet,
    #[error("duplicate points at positions {0} and {1}")]
    DuplicatePoint(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("guard exceeded: {count} > {limit}")]
    GuardExceeded { count: u128, limit: u128 },
    #[error("no convergence after {iterations} iterations (residual {residual})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("unsupported body: {0}")]
    UnsupportedBody(&'static str),
    #[error("coincident points where distinct ones are required")]
    Degenerate,
    #[error(transparent)]
    Metric(#[from] MetricViolation),
}

pub type Result<T> = std::result::Result<T, GeomError>;
