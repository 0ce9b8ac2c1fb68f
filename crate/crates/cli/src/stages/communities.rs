use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use terrace::communities::{louvain, LouvainConfig};
use terrace::Partition;

use super::networks::{HASHTAG_SIMILARITY, INTERACTION, USER_SIMILARITY};
use super::{Context, Written};
use crate::error::CliError;

pub const SUMMARY: &str = "communities/summary.json";
/// Partitioned networks. The retweet partition feeds the activism detector.
pub const PARTITIONED: [&str; 4] = [USER_SIMILARITY, HASHTAG_SIMILARITY, "retweet", INTERACTION];

pub fn partition_path(network: &str) -> String {
    format!("communities/{network}.partition.csv")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionSummary {
    pub nodes: usize,
    pub communities: usize,
    /// Communities with at least the configured minimum size.
    pub large_communities: usize,
    pub modularity: f64,
    pub levels: Vec<f64>,
    pub resolution: f64,
    pub seed: u64,
    pub sizes: Vec<usize>,
}

impl Context {
    pub(super) fn partition(&self, network: &str) -> Result<Partition, CliError> {
        let path = partition_path(network);
        Partition::read_csv(self.out.open_file(&path)?).map_err(|e| CliError::runtime(&path, e))
    }
}

pub fn run(ctx: &mut Context, written: &mut Written) -> Result<(), CliError> {
    let config = LouvainConfig { resolution: ctx.config.communities.resolution, seed: ctx.seeds.communities };
    let min_size = ctx.config.communities.min_community_size;
    let mut summary = BTreeMap::new();
    for network in PARTITIONED {
        let graph = ctx.network(network)?;
        let partition = louvain(&graph, &config);
        let sizes = partition.sizes();
        tracing::info!(network, communities = sizes.len(), modularity = partition.modularity, "louvain done");
        let path = partition_path(network);
        ctx.write_with(written, &path, |w| partition.write_csv(w).map_err(|e| CliError::runtime(&path, e)))?;
        summary.insert(
            network.to_string(),
            PartitionSummary {
                nodes: partition.nodes.len(),
                communities: sizes.len(),
                large_communities: sizes.iter().filter(|&&s| s >= min_size).count(),
                modularity: partition.modularity,
                levels: partition.levels.clone(),
                resolution: partition.resolution,
                seed: partition.seed,
                sizes,
            },
        );
    }
    ctx.write_json(written, SUMMARY, &summary)
}
