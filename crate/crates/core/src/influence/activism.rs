use std::collections::HashMap;

use super::config::DetectorConfig;
use super::finding::{ActivismEvidence, Evidence, FindingKind, InfluenceFinding, SCHEMA_VERSION};
use crate::communities::Partition;
use crate::graphs::WeightedGraph;
use crate::ingest::{TweetKind, TweetRecord};
use crate::scalar::Scalar;

const TOP_ROOTS: usize = 5;

/// Flags retweet-network communities whose members retweet a larger share
/// of their tweets than everyone else in the network.
///
/// Rates are pooled: retweets over tweets across all members, compared
/// with the same ratio over the other network nodes.
pub fn detect_activist_clusters<T: Scalar>(
    retweet_graph: &WeightedGraph<T>,
    partition: &Partition<T>,
    corpus: &[TweetRecord],
    config: &DetectorConfig,
) -> Vec<InfluenceFinding> {
    let cfg = config.activism;
    let mut activity: HashMap<&str, (u64, u64)> = HashMap::new();
    for t in corpus {
        let e = activity.entry(t.user_id.as_str()).or_default();
        e.0 += 1;
        if t.kind == TweetKind::Retweet {
            e.1 += 1;
        }
    }
    let community_of: HashMap<&str, usize> =
        partition.nodes.iter().map(String::as_str).zip(partition.assignment.iter().copied()).collect();
    let node_comm: Vec<Option<usize>> = retweet_graph.node_ids().map(|id| community_of.get(id).copied()).collect();

    let count = partition.community_count();
    let mut size = vec![0usize; count];
    let mut tweets = vec![0u64; count];
    let mut retweets = vec![0u64; count];
    let (mut all_users, mut all_tweets, mut all_retweets) = (0usize, 0u64, 0u64);
    for (i, id) in retweet_graph.node_ids().enumerate() {
        let (tw, rt) = activity.get(id).copied().unwrap_or_default();
        all_users += 1;
        all_tweets += tw;
        all_retweets += rt;
        if let Some(c) = node_comm[i] {
            size[c] += 1;
            tweets[c] += tw;
            retweets[c] += rt;
        }
    }

    let mut inner_in = vec![0usize; retweet_graph.node_count()];
    for (s, d, _) in retweet_graph.edges() {
        if node_comm[s].is_some() && node_comm[s] == node_comm[d] {
            inner_in[d] += 1;
        }
    }

    let mut findings = Vec::new();
    for c in 0..count {
        if size[c] < cfg.min_cluster_size || tweets[c] == 0 {
            continue;
        }
        let rate = retweets[c] as f64 / tweets[c] as f64;
        let rest_tweets = all_tweets - tweets[c];
        let rest_users = all_users - size[c];
        let network_rate = if rest_tweets > 0 { (all_retweets - retweets[c]) as f64 / rest_tweets as f64 } else { 0.0 };
        let lift = rate - network_rate;
        if lift < cfg.min_retweet_rate_lift {
            continue;
        }
        let members_idx: Vec<usize> = (0..retweet_graph.node_count()).filter(|&i| node_comm[i] == Some(c)).collect();
        let mut roots: Vec<(String, usize)> = members_idx
            .iter()
            .filter(|&&i| inner_in[i] > 0)
            .map(|&i| (retweet_graph.node_id(i).to_string(), inner_in[i]))
            .collect();
        roots.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        roots.truncate(TOP_ROOTS);
        let mut members: Vec<String> = members_idx.iter().map(|&i| retweet_graph.node_id(i).to_string()).collect();
        members.sort();
        findings.push(InfluenceFinding {
            schema_version: SCHEMA_VERSION,
            kind: FindingKind::EmbeddedActivism,
            subject: c.to_string(),
            score: lift,
            evidence: Evidence::EmbeddedActivism(ActivismEvidence {
                community: c,
                size: size[c],
                member_tweets: tweets[c],
                community_retweet_rate: rate,
                network_retweet_rate: network_rate,
                lift,
                tweets_per_member: tweets[c] as f64 / size[c] as f64,
                network_tweets_per_user: if rest_users > 0 { rest_tweets as f64 / rest_users as f64 } else { 0.0 },
                top_roots: roots,
                members,
            }),
            thresholds_used: *config,
        });
    }
    findings
}
