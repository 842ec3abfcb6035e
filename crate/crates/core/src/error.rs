use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    OutOfRange { vertex: usize, n: usize },

    #[error("value {value} outside admissible range {range}")]
    ValueOutOfRange { value: f64, range: &'static str },

    #[error("vertex set has empty boundary")]
    EmptyBoundary,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph with {n} vertices exceeds the brute-force limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("signal does not belong to this graph")]
    HostMismatch,

    #[error("signal has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },

    #[error("negative power applied to a signal with kernel content")]
    SingularPower,

    #[error("signal is identically zero")]
    ZeroSignal,

    #[error("restricted Laplacian is singular (smallest singular value {sigma_min:e})")]
    SingularRestriction { sigma_min: f64 },

    #[error("closures of sets {first} and {second} intersect")]
    OverlappingClosures { first: usize, second: usize },

    #[error("sample family is not a frame (lower bound {lower:e}, upper bound {upper:e})")]
    NotAFrame { lower: f64, upper: f64 },

    #[error("Neumann iteration stopped after {iterations} steps with residual {residual:e}")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("no admissible subset with non-empty boundary")]
    NoFeasibleSubset,

    #[error("sample for vertex {0} missing")]
    MissingSample(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
