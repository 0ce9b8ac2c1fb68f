use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::influence::{Evidence, FindingKind, InfluenceFinding};

/// Ids touched by one planted campaign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignTruth {
    pub name: String,
    pub kind: FindingKind,
    /// Tweet id for hijacks, the first root account for activism, the
    /// account for megaphones.
    pub subject: String,
    pub users: Vec<String>,
    pub tweets: Vec<String>,
}

/// Labels known by construction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub seed: u64,
    /// Background community of each community member.
    pub user_communities: BTreeMap<String, usize>,
    /// Tweets carrying lexicon terms.
    pub political: BTreeSet<String>,
    /// Non-political tweets quoted or replied to by a political tweet.
    pub context: BTreeSet<String>,
    pub campaigns: Vec<CampaignTruth>,
}

impl GroundTruth {
    /// Ids an extraction of the political subset must return.
    pub fn expected_extraction(&self) -> BTreeSet<String> {
        self.political.union(&self.context).cloned().collect()
    }

    pub fn campaigns_of(&self, kind: FindingKind) -> impl Iterator<Item = &CampaignTruth> {
        self.campaigns.iter().filter(move |c| c.kind == kind)
    }

    /// The planted campaign a finding recovers, if any. Hijacks and
    /// megaphones match on their subject; an activist cluster matches the
    /// campaign supplying more than half of its members.
    pub fn campaign_for(&self, finding: &InfluenceFinding) -> Option<&CampaignTruth> {
        match &finding.evidence {
            Evidence::EmbeddedActivism(ev) => {
                let members: BTreeSet<&str> = ev.members.iter().map(String::as_str).collect();
                self.campaigns_of(finding.kind)
                    .map(|c| (c, c.users.iter().filter(|u| members.contains(u.as_str())).count()))
                    .filter(|&(_, overlap)| 2 * overlap > members.len())
                    .max_by_key(|&(_, overlap)| overlap)
                    .map(|(c, _)| c)
            }
            _ => self.campaigns_of(finding.kind).find(|c| c.subject == finding.subject),
        }
    }
}
