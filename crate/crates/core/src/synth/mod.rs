//! Labelled synthetic corpora with planted communities and campaigns.
//!
//! Background tweets come from fixed user communities, each drawing most
//! hashtags from its own vocabulary. Campaigns are appended afterwards from
//! otherwise idle accounts, so every planted id is known.

mod campaigns;
mod config;
mod generate;
pub mod random;
mod roster;
mod truth;
mod vocab;

use thiserror::Error;

pub use campaigns::plant_campaign;
pub use config::{CampaignSpec, CommunitySpec, KindMix, SynthConfig};
pub use generate::{generate_corpus, SynthCorpus};
pub use roster::{user_id, Roster, ANCHORS_PER_COMMUNITY};
pub use truth::{CampaignTruth, GroundTruth};
pub use vocab::{club_tag, Vocabulary, CLUBS, EXCLUDED_TERMS, POLITICAL_HASHTAGS, POLITICAL_KEYWORDS};

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid synthetic corpus config: {0}")]
    Config(String),
}
