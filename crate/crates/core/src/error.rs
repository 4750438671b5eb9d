use thiserror::Error;

/// Errors produced by the library.
///
/// Every variant describes a domain failure the caller can act on; no
/// operation returns an approximate answer in place of an error.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("graph has no arrival order")]
    MissingArrival,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("pattern must be connected")]
    Disconnected,

    #[error("arc count {arcs} exceeds cap {cap} at augmentation step {step}")]
    ArcExplosion { step: usize, arcs: usize, cap: usize },

    #[error("too many color subsets: more than {cap} would have to be examined")]
    TooManySubsets { cap: usize },

    #[error("no p-centered coloring found within {steps} augmentation steps")]
    StepsExhausted { steps: usize },

    #[error("embedding overflow: more than {cap} embeddings in one ball")]
    EmbeddingOverflow { cap: usize },

    #[error("ball of size {size} exceeds the cap {cap}")]
    BallTooLarge { size: usize, cap: f64 },

    #[error("undecided: branch-and-bound budget of {budget} nodes exhausted")]
    Undecided { budget: u64 },

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
