use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use terrace::graphs::InteractionKind;
use terrace::metrics::{
    actor_type_table, centrality_table, core_numbers, filter_by_edge_weight, global_properties, k_core,
    top_influencers, write_ranking_csv, ActorTypeTable, CentralityMetric, CentralityTable, GlobalMetrics, RankedEntry,
};

use super::networks::{self, COOCCURRENCE, INTERACTION};
use super::{Context, Written};
use crate::error::CliError;

pub const GLOBAL: &str = "metrics/global.json";
pub const CORES: &str = "metrics/cores.json";
pub const ACTOR_TYPES: &str = "metrics/actor_types.json";
pub const FILTERED: &str = "metrics/cooccurrence_filtered";
pub const CORE: &str = "metrics/cooccurrence_core";

/// Networks that get centrality tables.
pub const CENTRALITY_NETWORKS: [&str; 5] = [INTERACTION, "retweet", "quote", "reply", "mention"];

pub fn centrality_path(network: &str) -> String {
    format!("metrics/centrality/{network}.csv")
}

pub fn top_path(network: &str, metric: CentralityMetric) -> String {
    format!("metrics/top/{network}_{metric}.csv")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoreSummary {
    pub min_weight: f64,
    pub filtered_nodes: usize,
    pub filtered_edges: usize,
    /// Nodes are kept when their core number exceeds this.
    pub core_above: usize,
    pub max_core_number: usize,
    pub core_nodes: usize,
    pub core_edges: usize,
}

#[derive(Serialize)]
struct CentralityRow<'a> {
    node: &'a str,
    in_degree: f64,
    out_degree: f64,
    betweenness: f64,
    pagerank: f64,
}

pub fn run(ctx: &mut Context, written: &mut Written) -> Result<(), CliError> {
    let cfg = ctx.config.metrics.clone();
    let mut global: BTreeMap<String, GlobalMetrics> = BTreeMap::new();
    for (name, _) in networks::ALL {
        let graph = ctx.network(name)?;
        global.insert(name.to_string(), global_properties(&graph));
    }

    let cooccurrence = ctx.network(COOCCURRENCE)?;
    let filtered = filter_by_edge_weight(&cooccurrence, &cfg.cooccurrence_min_weight);
    let core = k_core(&cooccurrence, cfg.core_above + 1);
    global.insert("cooccurrence_filtered".into(), global_properties(&filtered));
    global.insert("cooccurrence_core".into(), global_properties(&core));
    let annotations = ctx.annotations()?;
    ctx.write_graph(written, FILTERED, &filtered, Some(&annotations))?;
    ctx.write_graph(written, CORE, &core, Some(&annotations))?;
    let cores = CoreSummary {
        min_weight: cfg.cooccurrence_min_weight,
        filtered_nodes: filtered.node_count(),
        filtered_edges: filtered.edge_count(),
        core_above: cfg.core_above,
        max_core_number: core_numbers(&cooccurrence).into_iter().max().unwrap_or(0),
        core_nodes: core.node_count(),
        core_edges: core.edge_count(),
    };
    ctx.write_json(written, CORES, &cores)?;
    ctx.write_json(written, GLOBAL, &global)?;

    let profiles = ctx.profiles()?;
    let mut rankings: BTreeMap<(CentralityMetric, &str), Vec<RankedEntry>> = BTreeMap::new();
    for network in CENTRALITY_NETWORKS {
        let graph = ctx.network(network)?;
        let tables: Vec<CentralityTable> = CentralityMetric::ALL
            .iter()
            .map(|&m| centrality_table(&graph, m, &cfg.pagerank))
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::runtime(format!("{network} centrality"), e))?;
        let path = centrality_path(network);
        ctx.write_with(written, &path, |w| {
            let mut wtr = csv_writer(w);
            for i in 0..graph.node_count() {
                let row = CentralityRow {
                    node: &tables[0].scores[i].0,
                    in_degree: tables[0].scores[i].1,
                    out_degree: tables[1].scores[i].1,
                    betweenness: tables[2].scores[i].1,
                    pagerank: tables[3].scores[i].1,
                };
                wtr.serialize(row).map_err(|e| CliError::runtime(&path, e))?;
            }
            wtr.flush().map_err(|e| CliError::runtime(&path, e))
        })?;
        for table in &tables {
            let top = top_influencers(table, Some(&profiles), cfg.top_k);
            let path = top_path(network, table.metric);
            ctx.write_with(written, &path, |w| write_ranking_csv(&top, w).map_err(|e| CliError::runtime(&path, e)))?;
            rankings.insert((table.metric, network), top);
        }
    }

    let mut actor_types: BTreeMap<CentralityMetric, ActorTypeTable> = BTreeMap::new();
    for metric in CentralityMetric::ALL {
        let columns: Vec<(InteractionKind, &[RankedEntry])> = InteractionKind::ALL
            .iter()
            .map(|&k| (k, rankings[&(metric, k.as_str())].as_slice()))
            .collect();
        actor_types.insert(metric, actor_type_table(&columns));
    }
    ctx.write_json(written, ACTOR_TYPES, &actor_types)
}

fn csv_writer(w: &mut dyn std::io::Write) -> csv::Writer<&mut dyn std::io::Write> {
    csv::Writer::from_writer(w)
}
