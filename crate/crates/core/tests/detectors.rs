mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use terrace::graphs::{build_interaction_network, InteractionKind, NodeCategory};
use terrace::influence::{DetectorConfig, Evidence, FindingKind, InfluenceFinding};
use terrace::ingest::TweetKind;
use terrace::synth::{generate_corpus, CampaignSpec, SynthConfig, SynthCorpus};

fn scenario(seed: u64, campaigns: Vec<CampaignSpec>) -> SynthCorpus {
    generate_corpus(&SynthConfig { seed, campaigns, ..Default::default() }).unwrap()
}

fn fixture() -> &'static SynthCorpus {
    static CORPUS: OnceLock<SynthCorpus> = OnceLock::new();
    CORPUS.get_or_init(|| scenario(17, SynthConfig::default().campaigns))
}

fn keys(findings: &[InfluenceFinding]) -> BTreeSet<(FindingKind, String)> {
    findings.iter().map(|f| (f.kind, f.subject.clone())).collect()
}

#[test]
fn planted_campaigns_are_found_exactly() {
    for seed in [1, 2] {
        let corpus = scenario(seed, SynthConfig::default().campaigns);
        let findings = common::run_detectors(&corpus, &DetectorConfig::default());
        for f in &findings {
            assert!(corpus.truth.campaign_for(f).is_some(), "seed {seed}: unmatched {} {}", f.kind, f.subject);
        }
        for c in &corpus.truth.campaigns {
            assert!(findings.iter().any(|f| corpus.truth.campaign_for(f) == Some(c)), "seed {seed}: missed {}", c.name);
        }
    }
}

#[test]
fn single_campaign_corpora_have_full_recall() {
    for (seed, spec) in [CampaignSpec::hijack(), CampaignSpec::activism(), CampaignSpec::megaphone()].into_iter().enumerate() {
        let corpus = scenario(100 + seed as u64, vec![spec]);
        let findings = common::run_detectors(&corpus, &DetectorConfig::default());
        let campaign = &corpus.truth.campaigns[0];
        assert!(findings.iter().any(|f| corpus.truth.campaign_for(f) == Some(campaign)), "missed {}", campaign.name);
    }
}

#[test]
fn background_alone_raises_nothing() {
    let corpus = scenario(5, Vec::new());
    assert!(common::run_detectors(&corpus, &DetectorConfig::default()).is_empty());
}

#[test]
fn rerunning_gives_identical_findings() {
    let corpus = fixture();
    let a = common::run_detectors(corpus, &DetectorConfig::default());
    let b = common::run_detectors(corpus, &DetectorConfig::default());
    assert_eq!(a, b);
}

#[test]
fn evidence_is_recomputable_from_the_corpus() {
    let corpus = fixture();
    let profiles = corpus.profile_set();
    let affiliations = corpus.vocabulary.affiliations(corpus.config.football_affiliation);
    for f in common::run_detectors(corpus, &DetectorConfig::default()) {
        match &f.evidence {
            Evidence::Hijack(ev) => {
                let retweets: Vec<_> = corpus
                    .records
                    .iter()
                    .filter(|r| r.kind == TweetKind::Retweet && r.target_tweet_id.as_deref() == Some(&f.subject))
                    .collect();
                let quotes = corpus
                    .records
                    .iter()
                    .filter(|r| r.kind == TweetKind::Quote && r.target_tweet_id.as_deref() == Some(&f.subject))
                    .count() as u64;
                assert_eq!(ev.retweet_count, retweets.len() as u64);
                assert_eq!(ev.quote_count, quotes);
                let users: BTreeSet<&str> = retweets.iter().map(|r| r.user_id.as_str()).collect();
                assert_eq!(ev.distinct_retweeters, users.len());
                let domain = affiliations.get(ev.domain_hashtag.as_deref().unwrap()).unwrap();
                let known: Vec<_> = users.iter().filter_map(|u| profiles.get(u)).collect();
                let hits = known.iter().filter(|p| domain.matches(&p.description)).count();
                assert_eq!(ev.retweeters_with_profile, known.len());
                assert_eq!(ev.affiliation_rate, Some(hits as f64 / known.len() as f64));
            }
            Evidence::Megaphone(ev) => {
                let annotations = corpus.vocabulary.annotations();
                let topical = corpus
                    .records
                    .iter()
                    .filter(|r| r.user_id == f.subject && r.kind != TweetKind::Retweet)
                    .filter(|r| r.hashtags.iter().any(|h| annotations.is(h, NodeCategory::Football)))
                    .count();
                assert_eq!(ev.topical_posts, topical);
            }
            Evidence::EmbeddedActivism(ev) => {
                assert_eq!(ev.size, ev.members.len());
                assert!((ev.lift - (ev.community_retweet_rate - ev.network_retweet_rate)).abs() < 1e-12);
            }
        }
    }
}

fn tighten(base: DetectorConfig, steps: (u64, f64, usize, f64, usize, usize)) -> DetectorConfig {
    let mut t = base;
    t.hijack.min_engagement += steps.0;
    t.hijack.max_affiliation_ratio *= steps.1;
    t.activism.min_cluster_size += steps.2;
    t.activism.min_retweet_rate_lift += steps.3;
    t.megaphone.top_k_in_degree = t.megaphone.top_k_in_degree.saturating_sub(steps.4).max(1);
    t.megaphone.max_topical_posts = t.megaphone.max_topical_posts.saturating_sub(steps.5);
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tightening_never_adds_findings(
        base in (1u64..400, 0.05f64..1.0, 1usize..40, 0.01f64..0.6, 1usize..40, 0usize..20),
        steps in (0u64..600, 0.1f64..=1.0, 0usize..200, 0.0f64..0.3, 0usize..20, 0usize..10),
    ) {
        let mut config = DetectorConfig::default();
        config.hijack.min_engagement = base.0;
        config.hijack.max_affiliation_ratio = base.1;
        config.activism.min_cluster_size = base.2;
        config.activism.min_retweet_rate_lift = base.3;
        config.megaphone.top_k_in_degree = base.4;
        config.megaphone.max_topical_posts = base.5;
        let corpus = fixture();
        let loose = common::run_detectors(corpus, &config);
        let strict = common::run_detectors(corpus, &tighten(config, steps));
        prop_assert!(keys(&strict).is_subset(&keys(&loose)));

        let annotations = corpus.vocabulary.annotations();
        let political = terrace::ingest::extract_political_subset(&corpus.records, &corpus.vocabulary.lexicon()).records;
        let eligible: BTreeSet<String> = [InteractionKind::Quote, InteractionKind::Reply, InteractionKind::Mention]
            .into_iter()
            .flat_map(|k| {
                let g = build_interaction_network::<f64>(&political, Some(k)).graph;
                g.node_ids().map(str::to_string).collect::<Vec<_>>()
            })
            .collect();
        for f in &loose {
            match &f.evidence {
                Evidence::Hijack(_) => {
                    let tweet = corpus.records.iter().find(|r| r.tweet_id == f.subject).unwrap();
                    prop_assert!(tweet.hashtags.iter().any(|h| annotations.is(h, NodeCategory::Political)));
                }
                Evidence::Megaphone(_) => prop_assert!(eligible.contains(&f.subject)),
                Evidence::EmbeddedActivism(_) => {}
            }
        }
    }
}
