use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use terrace::graphs::{
    build_hashtag_cooccurrence, build_interaction_network, build_user_hashtag_matrix, project_similarity, Axis,
    BipartiteMatrix, InteractionKind,
};
use terrace::Graph;

use super::{Context, Written};
use crate::error::CliError;

pub const MATRIX: &str = "networks/user_hashtag_matrix.csv";
pub const SUMMARY: &str = "networks/summary.json";

pub const COOCCURRENCE: &str = "cooccurrence";
pub const INTERACTION: &str = "interaction";
pub const USER_SIMILARITY: &str = "user_similarity";
pub const HASHTAG_SIMILARITY: &str = "hashtag_similarity";

/// Every network the stage writes, with its directedness.
pub const ALL: [(&str, bool); 8] = [
    (COOCCURRENCE, false),
    (INTERACTION, true),
    ("retweet", true),
    ("quote", true),
    ("reply", true),
    ("mention", true),
    (USER_SIMILARITY, false),
    (HASHTAG_SIMILARITY, false),
];

pub fn stem(name: &str) -> String {
    format!("networks/{name}")
}

pub fn is_directed(name: &str) -> bool {
    ALL.iter().find(|(n, _)| *n == name).is_some_and(|&(_, d)| d)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetworkSize {
    pub directed: bool,
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectionSummary {
    pub min_similarity: f64,
    pub candidates: usize,
    pub retained: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub networks: BTreeMap<String, NetworkSize>,
    /// Interaction records without a target user.
    pub skipped_interactions: usize,
    pub matrix_users: usize,
    pub matrix_hashtags: usize,
    pub matrix_nonzero: usize,
    pub projections: BTreeMap<String, ProjectionSummary>,
}

impl Context {
    pub(super) fn network(&self, name: &str) -> Result<Graph, CliError> {
        self.read_graph(&stem(name), is_directed(name))
    }

    pub(super) fn matrix(&self) -> Result<BipartiteMatrix, CliError> {
        BipartiteMatrix::read_csv(self.out.open_file(MATRIX)?).map_err(|e| CliError::runtime(MATRIX, e))
    }
}

pub fn run(ctx: &mut Context, written: &mut Written) -> Result<(), CliError> {
    let political = ctx.political()?;
    let annotations = ctx.annotations()?;
    let mut sizes = BTreeMap::new();
    let mut save = |ctx: &Context, written: &mut Written, name: &str, graph: &Graph, annotate: bool| {
        sizes.insert(
            name.to_string(),
            NetworkSize { directed: graph.is_directed(), nodes: graph.node_count(), edges: graph.edge_count() },
        );
        ctx.write_graph(written, &stem(name), graph, annotate.then_some(&annotations))
    };

    let cooccurrence: Graph = build_hashtag_cooccurrence(&political);
    save(ctx, written, COOCCURRENCE, &cooccurrence, true)?;

    let all = build_interaction_network::<f64>(&political, None);
    save(ctx, written, INTERACTION, &all.graph, false)?;
    for kind in InteractionKind::ALL {
        let net = build_interaction_network::<f64>(&political, Some(kind));
        save(ctx, written, kind.as_str(), &net.graph, false)?;
    }

    let cfg = &ctx.config.networks;
    let matrix = build_user_hashtag_matrix(&political, cfg.min_hashtag_uses, cfg.min_user_tweets);
    ctx.write_with(written, MATRIX, |w| matrix.write_csv(w).map_err(|e| CliError::runtime(MATRIX, e)))?;
    tracing::info!(users = matrix.n_users(), hashtags = matrix.n_hashtags(), "user x hashtag matrix built");

    let mut projections = BTreeMap::new();
    for (name, axis) in [(HASHTAG_SIMILARITY, Axis::Hashtag), (USER_SIMILARITY, Axis::User)] {
        let pc = ctx.config.networks.projection(axis, ctx.seeds.networks);
        let projection = project_similarity::<f64>(&matrix, &pc).map_err(|e| CliError::runtime(name, e))?;
        let retained = projection.graph.edge_count();
        tracing::info!(network = name, candidates = projection.tests.len(), retained, "projection done");
        projections.insert(
            name.to_string(),
            ProjectionSummary {
                min_similarity: pc.min_similarity,
                candidates: projection.tests.len(),
                retained,
                seed: pc.rng_seed,
            },
        );
        save(ctx, written, name, &projection.graph, axis == Axis::Hashtag)?;
    }

    let summary = Summary {
        networks: sizes,
        skipped_interactions: all.skipped,
        matrix_users: matrix.n_users(),
        matrix_hashtags: matrix.n_hashtags(),
        matrix_nonzero: matrix.nnz(),
        projections,
    };
    ctx.write_json(written, SUMMARY, &summary)
}
