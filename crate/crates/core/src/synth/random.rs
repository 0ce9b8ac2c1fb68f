//! Small random structures with known answers, for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graphs::{BipartiteMatrix, WeightedGraph};
use crate::ingest::{TweetKind, TweetRecord};
use crate::scalar::Scalar;

/// `blocks` groups of `size` nodes; each pair is linked with `p_in` inside a
/// block and `p_out` across. Returns the graph and each node's block.
pub fn planted_partition<T: Scalar>(
    blocks: usize,
    size: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> (WeightedGraph<T>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = blocks * size;
    let truth: Vec<usize> = (0..n).map(|i| i / size).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if truth[u] == truth[v] { p_in } else { p_out };
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (WeightedGraph::from_unit_edges(false, n, &edges).expect("valid edges"), truth)
}

/// G(n, p) with unit weights; directed graphs consider both orientations.
///
/// # Panics
///
/// If `p` is outside `[0, 1]`.
pub fn erdos_renyi<T: Scalar>(n: usize, p: f64, directed: bool, seed: u64) -> WeightedGraph<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && (directed || u < v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::from_unit_edges(directed, n, &edges).expect("valid edges")
}

/// Uniform random recursive tree: node `i` attaches to a random earlier node.
pub fn random_tree<T: Scalar>(n: usize, seed: u64) -> WeightedGraph<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    WeightedGraph::from_unit_edges(false, n, &edges).expect("valid edges")
}

/// One original by `hub` and a retweet of it from each of `n` distinct fans.
pub fn star_cascade(hub: &str, n: usize) -> Vec<TweetRecord> {
    let at = chrono::DateTime::from_timestamp(1_500_000_000, 0).expect("valid timestamp");
    let source = TweetRecord {
        tweet_id: format!("{hub}-src"),
        user_id: hub.to_string(),
        timestamp: at,
        text: "big news #cascade".into(),
        hashtags: vec!["cascade".into()],
        kind: TweetKind::Original,
        target_tweet_id: None,
        target_user_id: None,
        mentioned_user_ids: Vec::new(),
    };
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        out.push(TweetRecord {
            tweet_id: format!("{hub}-rt{i}"),
            user_id: format!("fan{i}"),
            timestamp: at + chrono::Duration::seconds(i as i64 + 1),
            text: format!("RT @{hub}: {}", source.text),
            hashtags: source.hashtags.clone(),
            kind: TweetKind::Retweet,
            target_tweet_id: Some(source.tweet_id.clone()),
            target_user_id: Some(hub.to_string()),
            mentioned_user_ids: vec![hub.to_string()],
        });
    }
    out.insert(0, source);
    out
}

/// Random user × hashtag counts; each cell is non-zero with probability
/// `density` and then uniform in `1..=max_count`. Users `u0..` and hashtags
/// `h0..` with no counts are absent from the result.
pub fn random_bipartite(users: usize, hashtags: usize, density: f64, max_count: u64, seed: u64) -> BipartiteMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = Vec::new();
    for u in 0..users {
        for h in 0..hashtags {
            if rng.gen_bool(density) {
                cells.push((format!("u{u:02}"), format!("h{h:02}"), rng.gen_range(1..=max_count)));
            }
        }
    }
    BipartiteMatrix::from_triplets(cells)
}
