use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(usize),
    #[error("dimension vector has {got} entries, quiver has {expected} vertices")]
    IndexMismatch { expected: usize, got: usize },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("vertex {0} carries a loop; reflection undefined")]
    LoopVertex(usize),
    #[error("zero dimension vector")]
    ZeroVector,
    #[error("quiver is disconnected")]
    Disconnected,
    #[error("unsupported quiver type: {0}")]
    UnsupportedType(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular group element at vertex {0}")]
    Singular(usize),
    #[error("zero torus parameter")]
    ZeroTorusParameter,
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("representation is not in the attracting set")]
    NotAttracting,
    #[error("incompatible invariant records: {0}")]
    IncompatibleRecords(String),
    #[error("invalid dimension data: {0}")]
    Dimension(String),
    #[error("invalid correspondence class: {0}")]
    InvalidClass(String),
    #[error("support pattern violated: {0}")]
    SupportViolation(String),
    #[error("inconsistent multiplicity data: {0}")]
    Multiplicity(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
