//! Network construction: hashtag co-occurrence, user interaction and
//! bipartite similarity projections.

mod annotation;
mod bipartite;
mod build;
mod graph;
pub mod io;
mod projection;

pub use annotation::{Annotations, NodeAnnotation, NodeCategory};
pub use bipartite::{build_user_hashtag_matrix, BipartiteMatrix, DEFAULT_MIN_HASHTAG_USES, DEFAULT_MIN_USER_TWEETS};
pub use build::{build_hashtag_cooccurrence, build_interaction_network, InteractionKind, InteractionNetwork};
pub use graph::WeightedGraph;
pub use projection::{
    cosine_similarity, permutation_rng, project_similarity, Axis, PairTest, Projection, ProjectionConfig,
    DEFAULT_ALPHA, DEFAULT_PERMUTATIONS, HASHTAG_MIN_SIMILARITY, MIN_PERMUTATIONS, USER_MIN_SIMILARITY,
};

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop on {0:?}")]
    SelfLoop(String),
    #[error("edge weight must be positive, got {0}")]
    NonPositiveWeight(f64),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("similarity undefined for an all-zero vector")]
    ZeroVector,
    #[error("invalid projection config: {0}")]
    Config(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
