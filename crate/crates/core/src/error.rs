use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },

    #[error("self-loop ({0}, {0})")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertices {c} and {x} are at distance {dist}; at least 2 is required")]
    TooClose { c: usize, x: usize, dist: u32 },

    #[error("vertices {0} and {1} lie in different components")]
    Unreachable(usize, usize),

    #[error("invalid subgraph: {0}")]
    InvalidSubgraph(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("subgraph is not isometric: d_H({u}, {v}) = {internal}, d_G = {parent}")]
    NotIsometric {
        u: usize,
        v: usize,
        internal: u32,
        parent: u32,
    },

    #[error("no guarding witness for a cop on {c} towards {x}")]
    NoGuardWitness { c: usize, x: usize },

    #[error("state space of {states} states exceeds the budget of {budget}")]
    BudgetExceeded { states: u64, budget: u64 },

    #[error("generator gave up after {0} attempts")]
    RetriesExhausted(usize),

    #[error("exhaustive search is limited to {limit} vertices, graph has {n}")]
    SearchLimit { n: usize, limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),
}
