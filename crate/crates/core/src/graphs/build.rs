use std::fmt;

use serde::{Deserialize, Serialize};

use super::graph::WeightedGraph;
use crate::ingest::{TweetKind, TweetRecord};
use crate::scalar::Scalar;

/// Interaction channel of the user network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InteractionKind {
    Retweet,
    Quote,
    Reply,
    Mention,
}

impl InteractionKind {
    pub const ALL: [InteractionKind; 4] = [
        InteractionKind::Retweet,
        InteractionKind::Quote,
        InteractionKind::Reply,
        InteractionKind::Mention,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InteractionKind::Retweet => "retweet",
            InteractionKind::Quote => "quote",
            InteractionKind::Reply => "reply",
            InteractionKind::Mention => "mention",
        }
    }

    fn of_tweet(kind: TweetKind) -> Option<Self> {
        match kind {
            TweetKind::Original => None,
            TweetKind::Retweet => Some(InteractionKind::Retweet),
            TweetKind::Quote => Some(InteractionKind::Quote),
            TweetKind::Reply => Some(InteractionKind::Reply),
        }
    }
}

impl fmt::Display for InteractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Undirected hashtag network: every unordered pair of distinct hashtags in
/// a record adds one to the pair's weight. Every hashtag seen becomes a node.
pub fn build_hashtag_cooccurrence<T: Scalar>(corpus: &[TweetRecord]) -> WeightedGraph<T> {
    let mut graph = WeightedGraph::new_undirected();
    let mut ids = Vec::new();
    for record in corpus {
        ids.clear();
        for tag in &record.hashtags {
            let idx = graph.add_node(tag);
            if !ids.contains(&idx) {
                ids.push(idx);
            }
        }
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                graph.add_weight(a, b, T::one()).expect("distinct hashtag pair");
            }
        }
    }
    graph
}

/// Directed user network plus the number of interaction records that could
/// not be placed.
#[derive(Debug, Clone)]
pub struct InteractionNetwork<T> {
    pub graph: WeightedGraph<T>,
    /// Retweets, quotes or replies lacking a target user.
    pub skipped: usize,
}

/// Builds the user interaction network. With `kind_filter = None` the
/// result is the union over all four channels.
///
/// Retweets, quotes and replies point at `target_user_id`; mentions fan out
/// to each mentioned user, but only from originals, quotes and replies
/// (mentions carried inside retweets are copies of the source text).
/// Self-interactions are dropped.
pub fn build_interaction_network<T: Scalar>(
    corpus: &[TweetRecord],
    kind_filter: Option<InteractionKind>,
) -> InteractionNetwork<T> {
    let wanted = |k: InteractionKind| kind_filter.map_or(true, |f| f == k);
    let mut graph = WeightedGraph::new_directed();
    let mut skipped = 0;
    for record in corpus {
        if let Some(kind) = InteractionKind::of_tweet(record.kind) {
            if wanted(kind) {
                match record.target_user_id.as_deref() {
                    Some(target) if target != record.user_id => {
                        graph
                            .add_weight_by_id(&record.user_id, target, T::one())
                            .expect("distinct users");
                    }
                    Some(_) => {}
                    None => skipped += 1,
                }
            }
        }
        if record.kind != TweetKind::Retweet && wanted(InteractionKind::Mention) {
            for target in &record.mentioned_user_ids {
                if *target != record.user_id {
                    graph
                        .add_weight_by_id(&record.user_id, target, T::one())
                        .expect("distinct users");
                }
            }
        }
    }
    InteractionNetwork { graph, skipped }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::{TimeZone, Utc};

    fn rec(id: usize, user: &str, kind: TweetKind, target: Option<&str>, tags: &[&str], mentions: &[&str]) -> TweetRecord {
        TweetRecord {
            tweet_id: id.to_string(),
            user_id: user.into(),
            timestamp: Utc.with_ymd_and_hms(2017, 1, 1, 0, 0, 0).unwrap(),
            text: String::new(),
            hashtags: tags.iter().map(|s| s.to_string()).collect(),
            kind,
            target_tweet_id: (kind != TweetKind::Original).then(|| "x".to_string()),
            target_user_id: target.map(str::to_string),
            mentioned_user_ids: mentions.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn weight(g: &WeightedGraph<f64>, a: &str, b: &str) -> Option<f64> {
        g.edge_weight(g.node_index(a)?, g.node_index(b)?).copied()
    }

    #[test]
    fn triple_expands_to_triangle() {
        let g: WeightedGraph<f64> =
            build_hashtag_cooccurrence(&[rec(0, "u", TweetKind::Original, None, &["a", "b", "c"], &[])]);
        assert_eq!(g.edge_count(), 3);
        for (x, y) in [("a", "b"), ("a", "c"), ("b", "c")] {
            assert_eq!(weight(&g, x, y), Some(1.0));
        }
    }

    #[test]
    fn repeated_pairs_add_up() {
        let t = rec(0, "u", TweetKind::Original, None, &["a", "b"], &[]);
        let g: WeightedGraph<f64> = build_hashtag_cooccurrence(&[t.clone(), t]);
        assert_eq!(weight(&g, "a", "b"), Some(2.0));
    }

    #[test]
    fn single_hashtag_records_give_nodes_only() {
        let g: WeightedGraph<f64> =
            build_hashtag_cooccurrence(&[rec(0, "u", TweetKind::Original, None, &["solo"], &[])]);
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn retweets_accumulate_and_mentions_fan_out() {
        let corpus = vec![
            rec(0, "u", TweetKind::Retweet, Some("v"), &[], &["v"]),
            rec(1, "u", TweetKind::Retweet, Some("v"), &[], &["v"]),
            rec(2, "u", TweetKind::Original, None, &[], &["v", "w"]),
        ];
        let rt = build_interaction_network::<f64>(&corpus, Some(InteractionKind::Retweet)).graph;
        assert_eq!(weight(&rt, "u", "v"), Some(2.0));
        let m = build_interaction_network::<f64>(&corpus, Some(InteractionKind::Mention)).graph;
        assert_eq!(weight(&m, "u", "v"), Some(1.0));
        assert_eq!(weight(&m, "u", "w"), Some(1.0));
        assert_eq!(m.edge_count(), 2);
    }

    #[test]
    fn missing_target_is_counted() {
        let corpus = vec![rec(0, "u", TweetKind::Reply, None, &[], &[])];
        let net = build_interaction_network::<f64>(&corpus, None);
        assert_eq!(net.skipped, 1);
        assert_eq!(net.graph.edge_count(), 0);
    }

    #[test]
    fn star_cascade() {
        let corpus: Vec<_> = (0..200)
            .map(|i| rec(i, &format!("fan{i}"), TweetKind::Retweet, Some("hub"), &[], &[]))
            .collect();
        let g = build_interaction_network::<f64>(&corpus, Some(InteractionKind::Retweet)).graph;
        let hub = g.node_index("hub").unwrap();
        assert_eq!(g.in_degrees()[hub], 200);
        assert_eq!(g.edge_count(), 200);
    }
}
