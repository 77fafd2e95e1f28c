use thiserror::Error;

use crate::split::SmallObstruction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("negative weight on vertex {0}")]
    NegativeWeight(usize),
    #[error("weight map has {weights} entries but the graph has {n} vertices")]
    WeightLength { weights: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("instance has {n} vertices, above the limit of {limit} for {what}")]
    InstanceTooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("induced path search exceeded its budget of {max_nodes} nodes")]
    BudgetExceeded { max_nodes: u64 },
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("vertex set is not a hitting set: {witness:?} remains")]
    NotAHittingSet { witness: SmallObstruction },
}
