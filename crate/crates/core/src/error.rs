use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),

    #[error("lambda2 is undefined for a graph with {0} vertex(es)")]
    TooFewVertices(usize),

    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("embedding is not zero-sum (defect {0:e})")]
    NotZeroSum(f64),

    #[error("embedding has zero norm")]
    ZeroNorm,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no balanced split found by strategy `{0}`")]
    NoSplit(String),

    #[error("search budget exceeded")]
    BudgetExceeded,

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}
