//! Global network properties, centralities, core and weight filters, and
//! annotated influencer rankings.
//!
//! All functions are pure over an immutable graph. Per-source passes run in
//! parallel over fixed chunks and are merged in chunk order, so results do
//! not depend on the thread count.

mod centrality;
mod cores;
mod global;
mod paths;
mod ranking;

pub use centrality::{
    betweenness, betweenness_with, degree_scores, pagerank, PageRankConfig, PathWeighting,
};
pub use cores::{core_numbers, filter_by_edge_weight, k_core};
pub use global::{connected_components, global_properties, GlobalMetrics};
pub use paths::{bfs_distances, PathStats};
pub use ranking::{
    actor_type_table, centrality_table, top_influencers, write_ranking_csv, ActorTypeRow, ActorTypeTable,
    CentralityMetric, CentralityTable, RankedEntry, DEFAULT_TOP_K,
};

#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("pagerank did not converge after {iterations} iterations (last L1 change {delta:e})")]
    NoConvergence {
        iterations: usize,
        delta: f64,
        /// Last iterate, in node index order.
        last: Vec<f64>,
    },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}
