use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph on {n} vertices exceeds the {limit}-vertex limit of this operation")]
    GraphTooLarge { n: usize, limit: usize },

    #[error("pattern on {vertices} vertices exceeds the generic counting limit of {limit}")]
    PatternTooLarge { vertices: usize, limit: usize },

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("{what} of size {size} exceeds the exact-mode limit of {limit}")]
    InstanceTooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("count does not fit in 128 bits")]
    CountOverflow,

    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("malformed graph6 input: {0}")]
    Graph6(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("record error: {0}")]
    Record(String),
}

impl Error {
    /// True when the error means "ran out of budget" rather than "the input was bad".
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::InstanceTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
