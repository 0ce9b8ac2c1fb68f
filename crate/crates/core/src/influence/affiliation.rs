use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::index::CorpusIndex;
use super::InfluenceError;
use crate::ingest::{contains_word, fold_text, normalize_hashtag, ProfileSet, TweetKind};

/// Keywords that mark a profile as belonging to a domain (usually a club
/// hashtag), with the share of a typical audience that matches them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffiliationProfile {
    pub domain: String,
    pub keywords: BTreeSet<String>,
    pub baseline_rate: f64,
}

impl AffiliationProfile {
    pub fn new(
        domain: &str,
        keywords: impl IntoIterator<Item = impl AsRef<str>>,
        baseline_rate: f64,
    ) -> Result<Self, InfluenceError> {
        let bad = |message: &str| InfluenceError::Affiliation { domain: domain.to_string(), message: message.into() };
        let domain = normalize_hashtag(domain).map_err(|_| bad("empty domain"))?;
        let keywords: BTreeSet<String> = keywords
            .into_iter()
            .map(|k| fold_text(k.as_ref().trim()))
            .filter(|k| !k.is_empty())
            .collect();
        if keywords.is_empty() {
            return Err(bad("keyword set is empty"));
        }
        if !(0.0..=1.0).contains(&baseline_rate) {
            return Err(bad("baseline_rate outside [0, 1]"));
        }
        Ok(AffiliationProfile { domain, keywords, baseline_rate })
    }

    /// True if the description contains any keyword on word boundaries.
    pub fn matches(&self, description: &str) -> bool {
        let folded = fold_text(description);
        self.keywords.iter().any(|k| contains_word(&folded, k))
    }
}

/// Affiliation profiles keyed by domain.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AffiliationSet {
    profiles: BTreeMap<String, AffiliationProfile>,
}

impl AffiliationSet {
    pub fn new(profiles: impl IntoIterator<Item = AffiliationProfile>) -> Result<Self, InfluenceError> {
        let mut set = AffiliationSet::default();
        for p in profiles {
            let checked = AffiliationProfile::new(&p.domain, &p.keywords, p.baseline_rate)?;
            if set.profiles.insert(checked.domain.clone(), checked).is_some() {
                return Err(InfluenceError::Affiliation { domain: p.domain, message: "duplicate domain".into() });
            }
        }
        Ok(set)
    }

    pub fn get(&self, domain: &str) -> Option<&AffiliationProfile> {
        self.profiles.get(domain)
    }

    pub fn iter(&self) -> impl Iterator<Item = &AffiliationProfile> {
        self.profiles.values()
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// Reads a JSON array of profiles.
    pub fn from_json(json: &str) -> Result<Self, InfluenceError> {
        let list: Vec<AffiliationProfile> = serde_json::from_str(json)
            .map_err(|e| InfluenceError::Format { line: e.line(), message: e.to_string() })?;
        Self::new(list)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, InfluenceError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.profiles.values().collect::<Vec<_>>()).expect("serialisable")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffiliationRate {
    pub distinct_retweeters: usize,
    pub with_profile: usize,
    pub matched: usize,
    /// `None` when no retweeter has a profile.
    pub rate: Option<f64>,
}

/// Share of distinct retweeters of `tweet_id` whose profile description
/// matches the affiliation keywords. Retweeters without a profile are left
/// out of the denominator.
pub fn audience_affiliation(
    tweet_id: &str,
    index: &CorpusIndex<'_>,
    profiles: &ProfileSet,
    affiliation: &AffiliationProfile,
) -> AffiliationRate {
    let retweeters: BTreeSet<&str> = index.responses(tweet_id, TweetKind::Retweet).map(|t| t.user_id.as_str()).collect();
    let mut with_profile = 0;
    let mut matched = 0;
    for user in &retweeters {
        if let Some(p) = profiles.get(user) {
            with_profile += 1;
            if affiliation.matches(&p.description) {
                matched += 1;
            }
        }
    }
    AffiliationRate {
        distinct_retweeters: retweeters.len(),
        with_profile,
        matched,
        rate: (with_profile > 0).then(|| matched as f64 / with_profile as f64),
    }
}
