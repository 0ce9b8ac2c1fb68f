use serde::{Deserialize, Serialize};

use super::InfluenceError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HijackConfig {
    /// Minimum retweets plus quotes.
    pub min_engagement: u64,
    /// Audience affiliation must not exceed this multiple of the baseline.
    pub max_affiliation_ratio: f64,
}

impl Default for HijackConfig {
    fn default() -> Self {
        HijackConfig { min_engagement: 100, max_affiliation_ratio: 0.25 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ActivismConfig {
    pub min_cluster_size: usize,
    /// Required excess of the community retweet share over the rest of
    /// the network, in absolute share points.
    pub min_retweet_rate_lift: f64,
}

impl Default for ActivismConfig {
    fn default() -> Self {
        ActivismConfig { min_cluster_size: 10, min_retweet_rate_lift: 0.2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MegaphoneConfig {
    pub top_k_in_degree: usize,
    pub max_topical_posts: usize,
}

impl Default for MegaphoneConfig {
    fn default() -> Self {
        MegaphoneConfig { top_k_in_degree: 20, max_topical_posts: 5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DetectorConfig {
    pub hijack: HijackConfig,
    pub activism: ActivismConfig,
    pub megaphone: MegaphoneConfig,
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<(), InfluenceError> {
        let err = |m: &str| Err(InfluenceError::Config(m.to_string()));
        if self.hijack.min_engagement == 0 {
            return err("hijack.min_engagement must be positive");
        }
        if !(self.hijack.max_affiliation_ratio > 0.0 && self.hijack.max_affiliation_ratio <= 1.0) {
            return err("hijack.max_affiliation_ratio must be in (0, 1]");
        }
        if self.activism.min_cluster_size == 0 {
            return err("activism.min_cluster_size must be positive");
        }
        if !(self.activism.min_retweet_rate_lift > 0.0 && self.activism.min_retweet_rate_lift <= 1.0) {
            return err("activism.min_retweet_rate_lift must be in (0, 1]");
        }
        if self.megaphone.top_k_in_degree == 0 {
            return err("megaphone.top_k_in_degree must be positive");
        }
        if self.megaphone.max_topical_posts == 0 {
            return err("megaphone.max_topical_posts must be positive");
        }
        Ok(())
    }
}
