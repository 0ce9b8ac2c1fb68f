//! Detectors for three influence mechanisms inside a topical community:
//! hashtag hijacking, embedded activism and political megaphones.
//!
//! Detectors are pure functions of their inputs and a [`DetectorConfig`].
//! Findings serialise as one JSON object per line, tagged with
//! [`SCHEMA_VERSION`].

mod activism;
mod affiliation;
mod config;
mod finding;
mod hijack;
mod index;
mod megaphone;

pub use activism::detect_activist_clusters;
pub use affiliation::{audience_affiliation, AffiliationProfile, AffiliationRate, AffiliationSet};
pub use config::{ActivismConfig, DetectorConfig, HijackConfig, MegaphoneConfig};
pub use finding::{
    read_findings, write_findings, ActivismEvidence, CommunityCount, Evidence, FindingKind, HijackEvidence,
    InDegreeRank, InfluenceFinding, MegaphoneEvidence, RepeatRetweeter, SCHEMA_VERSION,
};
pub use hijack::detect_hijacks;
pub use index::CorpusIndex;
pub use megaphone::{detect_megaphones, MegaphoneNetworks};

#[derive(Debug, thiserror::Error)]
pub enum InfluenceError {
    #[error("invalid detector config: {0}")]
    Config(String),
    #[error("invalid affiliation profile {domain:?}: {message}")]
    Affiliation { domain: String, message: String },
    #[error("malformed finding on line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[cfg(test)]
pub(crate) mod fixtures {
    use chrono::{TimeZone, Utc};

    use crate::graphs::{Annotations, NodeAnnotation, NodeCategory};
    use crate::ingest::{TweetKind, TweetRecord};

    pub fn tweet(id: &str, user: &str, kind: TweetKind, target: Option<(&str, &str)>, tags: &[&str]) -> TweetRecord {
        TweetRecord {
            tweet_id: id.into(),
            user_id: user.into(),
            timestamp: Utc.with_ymd_and_hms(2017, 5, 1, 12, 0, 0).unwrap(),
            text: String::new(),
            hashtags: tags.iter().map(|t| t.to_string()).collect(),
            kind,
            target_tweet_id: target.map(|t| t.0.to_string()),
            target_user_id: target.map(|t| t.1.to_string()),
            mentioned_user_ids: Vec::new(),
        }
    }

    pub fn annotations() -> Annotations {
        Annotations::new([
            ("mufc", NodeCategory::Football),
            ("lfc", NodeCategory::Football),
            ("brexit", NodeCategory::Political),
            ("maga", NodeCategory::Political),
        ]
        .map(|(id, category)| NodeAnnotation { node_id: id.into(), category }))
        .unwrap()
    }
}
