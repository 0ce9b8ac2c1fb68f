use std::collections::BTreeMap;
use std::io::BufReader;

use serde::Serialize;
use serde_json::Value;
use terrace::influence::{read_findings, InfluenceFinding};
use terrace::metrics::CentralityMetric;

use super::communities::PARTITIONED;
use super::metrics::{top_path, CENTRALITY_NETWORKS};
use super::{communities, extract, influence, metrics, networks, themes, Context, Written};
use crate::error::CliError;

pub const REPORT: &str = "report.json";

#[derive(Serialize)]
struct Report {
    summary: Value,
    extraction: Value,
    networks: Value,
    global_metrics: Value,
    cores: Value,
    /// Top-ranked nodes per network and metric.
    centrality: BTreeMap<String, BTreeMap<CentralityMetric, Vec<BTreeMap<String, String>>>>,
    actor_types: Value,
    partitions: Value,
    /// Node to community, per partitioned network.
    assignments: BTreeMap<String, BTreeMap<String, usize>>,
    compositions: Value,
    themes: Value,
    engagement: Value,
    findings: Vec<InfluenceFinding>,
}

fn read_rows(ctx: &Context, rel: &str) -> Result<Vec<BTreeMap<String, String>>, CliError> {
    let mut rdr = csv::Reader::from_reader(ctx.out.open_file(rel)?);
    rdr.deserialize().collect::<Result<_, _>>().map_err(|e| CliError::runtime(rel, e))
}

pub fn run(ctx: &mut Context, written: &mut Written) -> Result<(), CliError> {
    let json = |rel: &str| ctx.out.read_json::<Value>(rel);
    let mut centrality = BTreeMap::new();
    for network in CENTRALITY_NETWORKS {
        let mut per_metric = BTreeMap::new();
        for metric in CentralityMetric::ALL {
            per_metric.insert(metric, read_rows(ctx, &top_path(network, metric))?);
        }
        centrality.insert(network.to_string(), per_metric);
    }
    let mut assignments = BTreeMap::new();
    for network in PARTITIONED {
        assignments.insert(network.to_string(), ctx.partition(network)?.to_map());
    }
    let findings = read_findings(BufReader::new(ctx.out.open_file(influence::FINDINGS)?))
        .map_err(|e| CliError::runtime(influence::FINDINGS, e))?;
    let report = Report {
        summary: json(extract::SUMMARY)?,
        extraction: json(extract::STATS)?,
        networks: json(networks::SUMMARY)?,
        global_metrics: json(metrics::GLOBAL)?,
        cores: json(metrics::CORES)?,
        centrality,
        actor_types: json(metrics::ACTOR_TYPES)?,
        partitions: json(communities::SUMMARY)?,
        assignments,
        compositions: json(themes::COMPOSITIONS)?,
        themes: json(themes::THEMES)?,
        engagement: json(themes::ENGAGEMENT)?,
        findings,
    };
    ctx.write_json(written, REPORT, &report)
}
