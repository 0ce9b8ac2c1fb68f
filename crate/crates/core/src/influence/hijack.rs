use std::collections::BTreeMap;

use super::affiliation::{audience_affiliation, AffiliationSet};
use super::config::DetectorConfig;
use super::finding::{CommunityCount, Evidence, FindingKind, HijackEvidence, InfluenceFinding, RepeatRetweeter, SCHEMA_VERSION};
use super::index::CorpusIndex;
use crate::graphs::{Annotations, NodeCategory};
use crate::ingest::{ProfileSet, TweetKind};

pub(crate) fn community_counts<'a>(
    users: impl IntoIterator<Item = &'a str>,
    communities: Option<&BTreeMap<String, usize>>,
) -> Vec<CommunityCount> {
    let Some(communities) = communities else {
        return Vec::new();
    };
    let mut counts: BTreeMap<Option<usize>, usize> = BTreeMap::new();
    for u in users {
        *counts.entry(communities.get(u).copied()).or_default() += 1;
    }
    let mut out: Vec<CommunityCount> =
        counts.into_iter().map(|(community, users)| CommunityCount { community, users }).collect();
    out.sort_by(|a, b| b.users.cmp(&a.users).then(a.community.cmp(&b.community)));
    out
}

/// Flags tweets that pair football and political hashtags, draw at least
/// `min_engagement` retweets and quotes, and reach an audience whose
/// affiliation with the football domain is at most
/// `max_affiliation_ratio` times its baseline.
///
/// When no football hashtag of the tweet has a baseline, or no retweeter
/// has a profile, the tweet is reported with the affiliation criterion
/// marked unevaluated.
pub fn detect_hijacks(
    index: &CorpusIndex<'_>,
    annotations: &Annotations,
    affiliations: &AffiliationSet,
    profiles: &ProfileSet,
    user_communities: Option<&BTreeMap<String, usize>>,
    config: &DetectorConfig,
) -> Vec<InfluenceFinding> {
    let cfg = config.hijack;
    let mut findings = Vec::new();
    for tweet in index.corpus() {
        if tweet.kind == TweetKind::Retweet {
            continue;
        }
        let tagged = |cat| -> Vec<String> {
            let mut v: Vec<String> = tweet.hashtags.iter().filter(|h| annotations.is(h, cat)).cloned().collect();
            v.sort();
            v
        };
        let football = tagged(NodeCategory::Football);
        if football.is_empty() {
            continue;
        }
        let political = tagged(NodeCategory::Political);
        if political.is_empty() {
            continue;
        }
        let mut per_user: BTreeMap<&str, u64> = BTreeMap::new();
        let mut retweet_count = 0u64;
        for rt in index.responses(&tweet.tweet_id, TweetKind::Retweet) {
            retweet_count += 1;
            *per_user.entry(rt.user_id.as_str()).or_default() += 1;
        }
        let quote_count = index.responses(&tweet.tweet_id, TweetKind::Quote).count() as u64;
        let engagement = retweet_count + quote_count;
        if engagement < cfg.min_engagement {
            continue;
        }

        // Best (lowest rate/baseline) football domain with a defined rate.
        let mut evaluated = None;
        for tag in &football {
            let Some(aff) = affiliations.get(tag) else { continue };
            let rate = audience_affiliation(&tweet.tweet_id, index, profiles, aff);
            let Some(r) = rate.rate else { continue };
            let passes = r <= cfg.max_affiliation_ratio * aff.baseline_rate;
            let ratio = if aff.baseline_rate > 0.0 { r / aff.baseline_rate } else { f64::INFINITY };
            let better = match &evaluated {
                None => true,
                Some((p, best_ratio, _, _, _)) => (passes && !p) || (passes == *p && ratio < *best_ratio),
            };
            if better {
                evaluated = Some((passes, ratio, tag.clone(), aff.baseline_rate, rate));
            }
        }
        if let Some((false, ..)) = evaluated {
            continue;
        }

        let mut repeat: Vec<RepeatRetweeter> = per_user
            .iter()
            .filter(|(_, &n)| n > 1)
            .map(|(u, &n)| RepeatRetweeter { user_id: u.to_string(), retweets: n })
            .collect();
        repeat.sort_by(|a, b| b.retweets.cmp(&a.retweets).then_with(|| a.user_id.cmp(&b.user_id)));
        let active = community_counts(repeat.iter().map(|r| r.user_id.as_str()), user_communities);
        let reply_count = index.responses(&tweet.tweet_id, TweetKind::Reply).count() as u64;

        let (domain_hashtag, affiliation_rate, baseline_rate, with_profile) = match &evaluated {
            Some((_, _, tag, baseline, rate)) => (Some(tag.clone()), rate.rate, Some(*baseline), rate.with_profile),
            None => (None, None, None, 0),
        };
        findings.push(InfluenceFinding {
            schema_version: SCHEMA_VERSION,
            kind: FindingKind::Hijack,
            subject: tweet.tweet_id.clone(),
            score: engagement as f64,
            evidence: Evidence::Hijack(HijackEvidence {
                author: tweet.user_id.clone(),
                retweet_count,
                quote_count,
                reply_count,
                engagement,
                football_hashtags: football,
                political_hashtags: political,
                affiliation_evaluated: evaluated.is_some(),
                domain_hashtag,
                affiliation_rate,
                baseline_rate,
                distinct_retweeters: per_user.len(),
                retweeters_with_profile: with_profile,
                repeat_retweeters: repeat,
                active_retweeter_communities: active,
            }),
            thresholds_used: *config,
        });
    }
    findings
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::influence::fixtures::{annotations, tweet};
    use crate::influence::AffiliationProfile;
    use crate::ingest::{TweetRecord, UserProfile};

    fn scenario(tags: &[&str], retweeters: usize, affiliated: usize) -> (Vec<TweetRecord>, ProfileSet) {
        let mut corpus = vec![tweet("src", "author", TweetKind::Original, None, tags)];
        let mut profiles = Vec::new();
        for i in 0..retweeters {
            let user = format!("u{i}");
            corpus.push(tweet(&format!("rt{i}"), &user, TweetKind::Retweet, Some(("src", "author")), tags));
            let description = if i < affiliated { "MUFC season ticket holder" } else { "patriot, free speech" };
            profiles.push(UserProfile { user_id: user, description: description.into(), verified: false, annotation: None });
        }
        // One repeat amplifier.
        for j in 0..10 {
            corpus.push(tweet(&format!("bot{j}"), "u0", TweetKind::Retweet, Some(("src", "author")), tags));
        }
        (corpus, ProfileSet::new(profiles).unwrap())
    }

    fn affiliations() -> AffiliationSet {
        AffiliationSet::new([AffiliationProfile::new("mufc", ["mufc", "united"], 0.22).unwrap()]).unwrap()
    }

    #[test]
    fn planted_hijack_is_flagged_with_repeat_counts() {
        let (corpus, profiles) = scenario(&["mufc", "maga"], 250, 2);
        let index = CorpusIndex::new(&corpus);
        let found = detect_hijacks(&index, &annotations(), &affiliations(), &profiles, None, &DetectorConfig::default());
        assert_eq!(found.len(), 1);
        let Evidence::Hijack(ev) = &found[0].evidence else { panic!() };
        assert_eq!(found[0].subject, "src");
        assert_eq!(ev.retweet_count, 260);
        assert_eq!(ev.distinct_retweeters, 250);
        assert_eq!(ev.affiliation_rate, Some(0.008));
        assert!(ev.affiliation_evaluated);
        assert_eq!(ev.repeat_retweeters, vec![RepeatRetweeter { user_id: "u0".into(), retweets: 11 }]);
    }

    #[test]
    fn club_audience_is_not_flagged() {
        let (corpus, profiles) = scenario(&["mufc", "maga"], 200, 180);
        let index = CorpusIndex::new(&corpus);
        assert!(detect_hijacks(&index, &annotations(), &affiliations(), &profiles, None, &DetectorConfig::default()).is_empty());
    }

    #[test]
    fn political_only_tweet_is_not_flagged() {
        let (corpus, profiles) = scenario(&["brexit", "maga"], 200, 0);
        let index = CorpusIndex::new(&corpus);
        assert!(detect_hijacks(&index, &annotations(), &affiliations(), &profiles, None, &DetectorConfig::default()).is_empty());
    }

    #[test]
    fn low_engagement_is_not_flagged() {
        let (corpus, profiles) = scenario(&["mufc", "maga"], 50, 0);
        let index = CorpusIndex::new(&corpus);
        assert!(detect_hijacks(&index, &annotations(), &affiliations(), &profiles, None, &DetectorConfig::default()).is_empty());
    }

    #[test]
    fn missing_baseline_is_reported_unevaluated() {
        let (corpus, profiles) = scenario(&["lfc", "maga"], 200, 150);
        let index = CorpusIndex::new(&corpus);
        let found = detect_hijacks(&index, &annotations(), &affiliations(), &profiles, None, &DetectorConfig::default());
        assert_eq!(found.len(), 1);
        let Evidence::Hijack(ev) = &found[0].evidence else { panic!() };
        assert!(!ev.affiliation_evaluated);
        assert_eq!(ev.affiliation_rate, None);
    }

    #[test]
    fn active_retweeters_grouped_by_community() {
        let (corpus, profiles) = scenario(&["mufc", "maga"], 250, 2);
        let index = CorpusIndex::new(&corpus);
        let comms: BTreeMap<String, usize> = [("u0".to_string(), 4)].into();
        let found = detect_hijacks(&index, &annotations(), &affiliations(), &profiles, Some(&comms), &DetectorConfig::default());
        let Evidence::Hijack(ev) = &found[0].evidence else { panic!() };
        assert_eq!(ev.active_retweeter_communities, vec![CommunityCount { community: Some(4), users: 1 }]);
    }
}
