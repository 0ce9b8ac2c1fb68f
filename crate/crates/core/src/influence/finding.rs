use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::config::DetectorConfig;
use super::InfluenceError;
use crate::graphs::InteractionKind;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingKind {
    Hijack,
    EmbeddedActivism,
    Megaphone,
}

impl FindingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FindingKind::Hijack => "hijack",
            FindingKind::EmbeddedActivism => "embedded_activism",
            FindingKind::Megaphone => "megaphone",
        }
    }
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepeatRetweeter {
    pub user_id: String,
    pub retweets: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommunityCount {
    /// `None` for users outside the supplied partition.
    pub community: Option<usize>,
    pub users: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HijackEvidence {
    pub author: String,
    pub retweet_count: u64,
    pub quote_count: u64,
    pub reply_count: u64,
    pub engagement: u64,
    pub football_hashtags: Vec<String>,
    pub political_hashtags: Vec<String>,
    /// False when no football hashtag has an affiliation baseline or no
    /// retweeter has a profile.
    pub affiliation_evaluated: bool,
    pub domain_hashtag: Option<String>,
    pub affiliation_rate: Option<f64>,
    pub baseline_rate: Option<f64>,
    pub distinct_retweeters: usize,
    pub retweeters_with_profile: usize,
    /// Users who retweeted more than once, most active first.
    pub repeat_retweeters: Vec<RepeatRetweeter>,
    /// Community spread of users who retweeted more than once; empty
    /// without a partition.
    pub active_retweeter_communities: Vec<CommunityCount>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InDegreeRank {
    pub network: InteractionKind,
    pub in_degree: usize,
    /// 1-based rank, `None` when outside the top k.
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActivismEvidence {
    pub community: usize,
    pub size: usize,
    pub member_tweets: u64,
    pub community_retweet_rate: f64,
    pub network_retweet_rate: f64,
    pub lift: f64,
    pub tweets_per_member: f64,
    pub network_tweets_per_user: f64,
    /// Members most retweeted from inside the community.
    pub top_roots: Vec<(String, usize)>,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MegaphoneEvidence {
    pub in_degrees: Vec<InDegreeRank>,
    pub networks_in_top_k: usize,
    pub topical_posts: usize,
    pub distinct_mentioners: usize,
    pub mention_concentration: Vec<CommunityCount>,
    /// Largest share of mentioners from a single community.
    pub top_community_share: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Evidence {
    Hijack(HijackEvidence),
    EmbeddedActivism(ActivismEvidence),
    Megaphone(MegaphoneEvidence),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfluenceFinding {
    pub schema_version: u32,
    pub kind: FindingKind,
    /// Tweet id for hijacks, community id for activism, user id for
    /// megaphones.
    pub subject: String,
    pub score: f64,
    pub evidence: Evidence,
    pub thresholds_used: DetectorConfig,
}

pub fn write_findings<W: Write>(mut writer: W, findings: &[InfluenceFinding]) -> std::io::Result<()> {
    for f in findings {
        serde_json::to_writer(&mut writer, f)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}

pub fn read_findings<R: BufRead>(reader: R) -> Result<Vec<InfluenceFinding>, InfluenceError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f: InfluenceFinding =
            serde_json::from_str(&line).map_err(|e| InfluenceError::Format { line: i + 1, message: e.to_string() })?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(InfluenceError::Format {
                line: i + 1,
                message: format!("unsupported schema version {}", f.schema_version),
            });
        }
        out.push(f);
    }
    Ok(out)
}
