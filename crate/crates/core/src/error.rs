use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("functional is not generic: {0}")]
    NonGenericFunctional(String),
    #[error("order has {found} entries but the polytope has {expected} vertices")]
    OrderArityMismatch { expected: usize, found: usize },
    #[error("order is not a permutation of the vertex ids")]
    NotAPermutation,
    #[error("polytope is not simple")]
    NotSimple,
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("orientation does not have a single source and a single sink")]
    NotSingleSourceSink,
    #[error("vertex {0} has outdegree zero but is not the sink")]
    ZeroOutdegreeNonSink(usize),
    #[error("{what} is {value}, above the cap {cap}")]
    CapExceeded { what: &'static str, value: String, cap: u64 },
    #[error("unknown bound `{0}`")]
    UnknownBound(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("face {0} does not have a unique source and sink")]
    NotLpAdmissibleFace(usize),
    #[error("polytope carries no 2-faces")]
    NoFaces,
    #[error("flip graph is disconnected")]
    Disconnected,
    #[error("not a monotone path: {0}")]
    NotAPath(String),
    #[error("flip {0} of the sequence cannot be applied")]
    IllegalFlip(usize),
    #[error("fiber construction needs dimension 3, got {0}")]
    NotDim3(usize),
    #[error("orientation is not LP-admissible")]
    NotLpAdmissible,
    #[error("incompatible node sequence: {0}")]
    IncompatibleSequence(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
