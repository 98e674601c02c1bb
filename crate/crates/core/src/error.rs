use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arrow {arrow} references vertex {vertex}, but the quiver has {vertex_count} vertices")]
    VertexOutOfRange {
        arrow: usize,
        vertex: usize,
        vertex_count: usize,
    },

    #[error("expected {expected} weights (one per arrow), got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("arrow {arrow} has weight zero; weights must be invertible")]
    ZeroWeight { arrow: usize },

    #[error("quiver contains an oriented cycle through arrows {cycle:?}")]
    Cyclic { cycle: Vec<usize> },

    #[error("arrows {0:?} do not compose into a path")]
    NotComposable(Vec<usize>),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("representation is not invertible on weight {weight}")]
    NonInvertibleAction { weight: String },

    #[error("boundary maps do not compose to zero in degree {degree}")]
    NotAChainComplex { degree: usize },

    #[error("invalid quiver morphism: {0}")]
    Morphism(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: weight is zero and no epsilon substitute was supplied")]
    ZeroWeightInput { line: usize },

    #[error("no attribute vector for vertex {0:?}")]
    MissingAttributes(String),

    #[error("Jaccard distance between {from:?} and {to:?} is zero and no epsilon substitute was supplied")]
    ZeroJaccard { from: String, to: String },

    #[error("self-pair {0} cannot be oriented (its weight would be zero)")]
    SelfPair(i64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
