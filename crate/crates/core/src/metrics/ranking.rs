use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::centrality::{betweenness, degree_scores, pagerank, PageRankConfig};
use super::MetricsError;
use crate::graphs::{InteractionKind, WeightedGraph};
use crate::ingest::{ActorType, ProfileSet};
use crate::scalar::Real;

pub const DEFAULT_TOP_K: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralityMetric {
    InDegree,
    OutDegree,
    Betweenness,
    Pagerank,
}

impl CentralityMetric {
    pub const ALL: [CentralityMetric; 4] = [
        CentralityMetric::InDegree,
        CentralityMetric::OutDegree,
        CentralityMetric::Betweenness,
        CentralityMetric::Pagerank,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CentralityMetric::InDegree => "in_degree",
            CentralityMetric::OutDegree => "out_degree",
            CentralityMetric::Betweenness => "betweenness",
            CentralityMetric::Pagerank => "pagerank",
        }
    }
}

impl fmt::Display for CentralityMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Scores for one metric, in graph node order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityTable {
    pub metric: CentralityMetric,
    pub scores: Vec<(String, f64)>,
}

pub fn centrality_table<T: Real>(
    graph: &WeightedGraph<T>,
    metric: CentralityMetric,
    pagerank_config: &PageRankConfig,
) -> Result<CentralityTable, MetricsError> {
    let raw: Vec<T> = match metric {
        CentralityMetric::InDegree => degree_scores(graph, true),
        CentralityMetric::OutDegree => degree_scores(graph, false),
        CentralityMetric::Betweenness => betweenness(graph),
        CentralityMetric::Pagerank => pagerank(graph, pagerank_config)?,
    };
    let scores = graph.node_ids().zip(raw).map(|(id, s)| (id.to_string(), s.to_f64_lossy())).collect();
    Ok(CentralityTable { metric, scores })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedEntry {
    pub rank: usize,
    pub node: String,
    pub score: f64,
    pub actor_type: ActorType,
}

/// Top `k` nodes by score; equal scores rank by node id. Nodes without a
/// profile annotation are labelled `other`.
pub fn top_influencers(table: &CentralityTable, profiles: Option<&ProfileSet>, k: usize) -> Vec<RankedEntry> {
    let mut order: Vec<&(String, f64)> = table.scores.iter().collect();
    order.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or_else(|| a.1.is_nan().cmp(&b.1.is_nan()))
            .then_with(|| a.0.cmp(&b.0))
    });
    order
        .into_iter()
        .take(k)
        .enumerate()
        .map(|(i, (node, score))| RankedEntry {
            rank: i + 1,
            node: node.clone(),
            score: *score,
            actor_type: profiles.map_or(ActorType::Other, |p| p.actor_type(node)),
        })
        .collect()
}

/// Writes `rank,node,score,actor_type` rows.
pub fn write_ranking_csv<W: Write>(entries: &[RankedEntry], writer: W) -> Result<(), MetricsError> {
    let mut wtr = csv::Writer::from_writer(writer);
    for e in entries {
        wtr.serialize(e)?;
    }
    wtr.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActorTypeRow {
    pub actor_type: ActorType,
    /// One count per column of the owning table.
    pub counts: Vec<usize>,
}

/// Actor-type composition of top-ranked users per interaction sub-network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActorTypeTable {
    pub columns: Vec<InteractionKind>,
    pub rows: Vec<ActorTypeRow>,
}

impl ActorTypeTable {
    pub fn count(&self, actor: ActorType, kind: InteractionKind) -> usize {
        let col = self.columns.iter().position(|&c| c == kind);
        let row = self.rows.iter().find(|r| r.actor_type == actor);
        match (row, col) {
            (Some(r), Some(c)) => r.counts[c],
            _ => 0,
        }
    }
}

/// Counts distinct users per actor type in each ranking.
pub fn actor_type_table(columns: &[(InteractionKind, &[RankedEntry])]) -> ActorTypeTable {
    let rows = ActorType::ALL
        .iter()
        .map(|&actor| ActorTypeRow {
            actor_type: actor,
            counts: columns
                .iter()
                .map(|(_, entries)| {
                    entries
                        .iter()
                        .filter(|e| e.actor_type == actor)
                        .map(|e| e.node.as_str())
                        .collect::<BTreeSet<_>>()
                        .len()
                })
                .collect(),
        })
        .collect();
    ActorTypeTable { columns: columns.iter().map(|(k, _)| *k).collect(), rows }
}
