use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("edge {0} is a loop")]
    Loop(usize),
    #[error("parallel edges between {0} and {1}")]
    ParallelEdge(usize, usize),
    #[error("invalid sign {0}, expected 1 or -1")]
    InvalidSign(i64),
    #[error("{what} exceeds the size limit ({actual} > {limit})")]
    TooLarge {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("permutation is not an automorphism of the underlying graph")]
    NotAutomorphism,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("graph is not cubic (vertex {0} has degree {1})")]
    NotCubic(usize, usize),
    #[error("graph is not bipartite, odd cycle {odd_cycle:?}")]
    NotBipartite { odd_cycle: Vec<usize> },
    #[error("invalid 1-factorization: {0}")]
    InvalidFactorization(String),
    #[error("not a trail: {0}")]
    NotATrail(String),
    #[error("invalid ladder: {0}")]
    InvalidLadder(String),
    #[error("invalid square: {0}")]
    InvalidSquare(String),
    #[error("invalid flow: {0}")]
    InvalidFlow(String),
    #[error("flow bound k = {0} out of range")]
    InvalidBound(i32),
    #[error("engines disagree on {spec}: {detail}")]
    Disagreement { spec: String, detail: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
