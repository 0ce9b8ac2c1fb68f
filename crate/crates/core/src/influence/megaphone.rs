use std::collections::{BTreeMap, BTreeSet};

use super::config::DetectorConfig;
use super::finding::{Evidence, FindingKind, InDegreeRank, InfluenceFinding, MegaphoneEvidence, SCHEMA_VERSION};
use super::hijack::community_counts;
use super::index::CorpusIndex;
use crate::graphs::{Annotations, InteractionKind, NodeCategory, WeightedGraph};
use crate::ingest::TweetKind;
use crate::scalar::Scalar;

/// The three sub-networks that count towards megaphone status.
#[derive(Debug, Clone, Copy)]
pub struct MegaphoneNetworks<'a, T> {
    pub quote: &'a WeightedGraph<T>,
    pub reply: &'a WeightedGraph<T>,
    pub mention: &'a WeightedGraph<T>,
}

struct Ranked {
    in_degree: BTreeMap<String, usize>,
    rank: BTreeMap<String, usize>,
}

fn rank_in_degree<T: Scalar>(graph: &WeightedGraph<T>, k: usize) -> Ranked {
    let deg = graph.in_degrees();
    let mut order: Vec<(usize, &str)> =
        graph.node_ids().enumerate().filter(|(i, _)| deg[*i] > 0).map(|(i, id)| (deg[i], id)).collect();
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(b.1)));
    Ranked {
        in_degree: order.iter().map(|&(d, id)| (id.to_string(), d)).collect(),
        rank: order.iter().take(k).enumerate().map(|(r, &(_, id))| (id.to_string(), r + 1)).collect(),
    }
}

/// Flags accounts in the top `top_k_in_degree` by in-degree of at least two
/// of the quote, reply and mention networks while authoring at most
/// `max_topical_posts` non-retweet tweets with a football hashtag.
pub fn detect_megaphones<T: Scalar>(
    networks: MegaphoneNetworks<'_, T>,
    index: &CorpusIndex<'_>,
    annotations: &Annotations,
    user_communities: Option<&BTreeMap<String, usize>>,
    config: &DetectorConfig,
) -> Vec<InfluenceFinding> {
    let cfg = config.megaphone;
    let ranked = [
        (InteractionKind::Quote, rank_in_degree(networks.quote, cfg.top_k_in_degree)),
        (InteractionKind::Reply, rank_in_degree(networks.reply, cfg.top_k_in_degree)),
        (InteractionKind::Mention, rank_in_degree(networks.mention, cfg.top_k_in_degree)),
    ];
    let candidates: BTreeSet<&str> = ranked.iter().flat_map(|(_, r)| r.rank.keys().map(String::as_str)).collect();

    let mut findings = Vec::new();
    for user in candidates {
        let in_top = ranked.iter().filter(|(_, r)| r.rank.contains_key(user)).count();
        if in_top < 2 {
            continue;
        }
        let topical = index
            .by_user(user)
            .filter(|t| t.kind != TweetKind::Retweet)
            .filter(|t| t.hashtags.iter().any(|h| annotations.is(h, NodeCategory::Football)))
            .count();
        if topical > cfg.max_topical_posts {
            continue;
        }
        let in_degrees: Vec<InDegreeRank> = ranked
            .iter()
            .map(|(kind, r)| InDegreeRank {
                network: *kind,
                in_degree: r.in_degree.get(user).copied().unwrap_or(0),
                rank: r.rank.get(user).copied(),
            })
            .collect();
        let mentioners: BTreeSet<&str> = match networks.mention.node_index(user) {
            Some(target) => networks.mention.edges().filter(|(_, d, _)| *d == target).map(|(s, _, _)| networks.mention.node_id(s)).collect(),
            None => BTreeSet::new(),
        };
        let concentration = community_counts(mentioners.iter().copied(), user_communities);
        let top_share = concentration.first().map(|c| c.users as f64 / mentioners.len() as f64);
        findings.push(InfluenceFinding {
            schema_version: SCHEMA_VERSION,
            kind: FindingKind::Megaphone,
            subject: user.to_string(),
            score: in_degrees.iter().map(|d| d.in_degree as f64).sum(),
            evidence: Evidence::Megaphone(MegaphoneEvidence {
                in_degrees,
                networks_in_top_k: in_top,
                topical_posts: topical,
                distinct_mentioners: mentioners.len(),
                mention_concentration: concentration,
                top_community_share: top_share,
            }),
            thresholds_used: *config,
        });
    }
    findings
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::build_interaction_network;
    use crate::influence::fixtures::{annotations, tweet};
    use crate::ingest::TweetRecord;

    fn networks(corpus: &[TweetRecord]) -> [WeightedGraph<f64>; 3] {
        [InteractionKind::Quote, InteractionKind::Reply, InteractionKind::Mention]
            .map(|k| build_interaction_network::<f64>(corpus, Some(k)).graph)
    }

    fn run(corpus: &[TweetRecord]) -> Vec<InfluenceFinding> {
        let [q, r, m] = networks(corpus);
        let index = CorpusIndex::new(corpus);
        let nets = MegaphoneNetworks { quote: &q, reply: &r, mention: &m };
        detect_megaphones(nets, &index, &annotations(), None, &DetectorConfig::default())
    }

    /// `target` receives mentions, replies and quotes from many users and
    /// writes `topical` football-tagged posts itself.
    fn corpus(target: &str, topical: usize, with_mentions: bool) -> Vec<TweetRecord> {
        let mut out = vec![tweet("p0", target, TweetKind::Original, None, &["brexit"])];
        for i in 0..topical {
            out.push(tweet(&format!("f{i}"), target, TweetKind::Original, None, &["mufc"]));
        }
        for i in 0..60 {
            let u = format!("u{i}");
            if with_mentions {
                let mut t = tweet(&format!("m{i}"), &u, TweetKind::Original, None, &["brexit"]);
                t.mentioned_user_ids = vec![target.into()];
                out.push(t);
                out.push(tweet(&format!("r{i}"), &u, TweetKind::Reply, Some(("p0", target)), &[]));
            }
            out.push(tweet(&format!("q{i}"), &u, TweetKind::Quote, Some(("p0", target)), &[]));
        }
        out
    }

    #[test]
    fn planted_megaphone_is_flagged() {
        let found = run(&corpus("leader", 1, true));
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].subject, "leader");
        let Evidence::Megaphone(ev) = &found[0].evidence else { panic!() };
        assert_eq!(ev.topical_posts, 1);
        assert_eq!(ev.networks_in_top_k, 3);
        assert_eq!(ev.distinct_mentioners, 60);
    }

    #[test]
    fn prolific_club_is_not_flagged() {
        assert!(run(&corpus("club", 300, true)).is_empty());
    }

    #[test]
    fn single_network_is_not_enough() {
        assert!(run(&corpus("quoted", 0, false)).is_empty());
    }

    #[test]
    fn retweet_attention_does_not_count() {
        let mut c = vec![tweet("p0", "star", TweetKind::Original, None, &["brexit"])];
        for i in 0..100 {
            c.push(tweet(&format!("rt{i}"), &format!("u{i}"), TweetKind::Retweet, Some(("p0", "star")), &["brexit"]));
        }
        assert!(run(&c).is_empty());
    }
}
