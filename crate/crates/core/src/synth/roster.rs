use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::config::SynthConfig;
use super::vocab::{Vocabulary, CLUBS, WORDS};
use crate::graphs::NodeCategory;
use crate::ingest::{ActorType, UserProfile};

pub const ANCHORS_PER_COMMUNITY: usize = 3;
pub const ANCHOR_WEIGHT: f64 = 40.0;

const PROFILE_WORDS: [&str; 20] = [
    "dad", "mum", "engineer", "teacher", "coffee", "walker", "reader", "gamer", "runner", "opinions", "music", "film",
    "baker", "nurse", "student", "retired", "cyclist", "gardener", "photos", "travel",
];

/// Users grouped by role.
#[derive(Debug, Clone)]
pub struct Roster {
    /// Members per community; the first [`ANCHORS_PER_COMMUNITY`] are anchors.
    pub communities: Vec<Vec<String>>,
    /// Accounts with no background activity, consumed by campaigns.
    pub idle: VecDeque<String>,
}

pub fn user_id(i: usize) -> String {
    format!("u{i:05}")
}

impl Roster {
    pub fn build(config: &SynthConfig) -> Self {
        let mut next = 0;
        let communities = config
            .communities
            .iter()
            .map(|c| {
                let ids = (next..next + c.size).map(user_id).collect();
                next += c.size;
                ids
            })
            .collect();
        Roster { communities, idle: (next..config.n_users).map(user_id).collect() }
    }

    pub fn is_anchor(&self, community: usize, user: &str) -> bool {
        self.communities[community].iter().take(ANCHORS_PER_COMMUNITY).any(|u| u == user)
    }

    /// Members of communities with the given focus, in community order.
    pub fn members_with_focus(&self, config: &SynthConfig, focus: NodeCategory) -> Vec<String> {
        self.communities
            .iter()
            .zip(&config.communities)
            .filter(|(_, spec)| spec.focus == focus)
            .flat_map(|(m, _)| m.iter().cloned())
            .collect()
    }
}

pub(crate) fn neutral_description(rng: &mut ChaCha8Rng) -> String {
    (0..3).map(|_| PROFILE_WORDS[rng.gen_range(0..PROFILE_WORDS.len())]).collect::<Vec<_>>().join(", ")
}

pub(crate) fn fan_description(club: usize, rng: &mut ChaCha8Rng) -> String {
    let mut name = CLUBS[club].to_string();
    name[..1].make_ascii_uppercase();
    format!("{name} till I die. {}", neutral_description(rng))
}

pub(crate) fn filler(rng: &mut ChaCha8Rng, n: usize) -> Vec<&'static str> {
    (0..n).map(|_| WORDS[rng.gen_range(0..WORDS.len())]).collect()
}

/// Profiles for every account, including idle ones.
pub fn build_profiles(
    config: &SynthConfig,
    roster: &Roster,
    vocab: &Vocabulary,
    rng: &mut ChaCha8Rng,
) -> BTreeMap<String, UserProfile> {
    let mut out = BTreeMap::new();
    let clubs = vocab.clubs.len();
    for (c, members) in roster.communities.iter().enumerate() {
        let focus = config.communities[c].focus;
        let own_club = vocab.club_communities.iter().position(|&fc| fc == c);
        for (i, user) in members.iter().enumerate() {
            let anchor = i < ANCHORS_PER_COMMUNITY;
            let (description, annotation) = if anchor {
                match focus {
                    NodeCategory::Football => {
                        (fan_description(own_club.expect("football community has a club"), rng), ActorType::FootballClub)
                    }
                    NodeCategory::Political => (format!("Member of parliament. {}", neutral_description(rng)), ActorType::PoliticianOrParty),
                    NodeCategory::Location => (format!("Regional news desk. {}", neutral_description(rng)), ActorType::Media),
                    NodeCategory::Other => (format!("Fan news and rumours. {}", neutral_description(rng)), ActorType::FanNews),
                }
            } else {
                let (rate, club, actor) = match focus {
                    NodeCategory::Football => (config.football_affiliation, own_club.unwrap(), ActorType::FootballFan),
                    NodeCategory::Political => (config.political_affiliation, rng.gen_range(0..clubs), ActorType::PoliticalUser),
                    _ => (config.other_affiliation, rng.gen_range(0..clubs), ActorType::Other),
                };
                let description =
                    if rng.gen_bool(rate) { fan_description(club, rng) } else { neutral_description(rng) };
                (description, actor)
            };
            out.insert(
                user.clone(),
                UserProfile {
                    user_id: user.clone(),
                    description,
                    verified: anchor,
                    annotation: (annotation != ActorType::Other).then_some(annotation),
                },
            );
        }
    }
    for user in &roster.idle {
        out.insert(
            user.clone(),
            UserProfile { user_id: user.clone(), description: neutral_description(rng), verified: false, annotation: None },
        );
    }
    out
}
