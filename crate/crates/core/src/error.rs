use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar literal `{0}`")]
pub struct ParseScalarError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("subspace is not contained in the total space")]
    NotASubspace,
}

/// A syntax or binding error in a bivector expression, with a byte offset into the source.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct LambdaParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lambda(#[from] LambdaParseError),
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("the Lie algebra is not nilpotent")]
    NotNilpotent,
    #[error("the complex structure is not integrable")]
    NotIntegrable,
    #[error("operation requires an abelian complex structure")]
    NotAbelian,
    #[error("expected a homogeneous element of bidegree {expected:?}")]
    WrongBidegree { expected: (usize, usize) },
    #[error("not a holomorphic Poisson structure: {0}")]
    NotHolomorphicPoisson(String),
    #[error("complex dimension {0} is too small (need at least 2)")]
    DimensionTooSmall(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownAlgebra(String),
    #[error("invalid catalog parameter: {0}")]
    InvalidParameter(String),
    #[error("algebra file: {0}")]
    File(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
