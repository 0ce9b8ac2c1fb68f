use std::collections::BTreeMap;
use std::fmt;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::IngestError;

/// Kind of account, from a user-supplied annotation file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActorType {
    PoliticianOrParty,
    Media,
    FootballClub,
    FanNews,
    PoliticalUser,
    ActivistGroup,
    FootballFan,
    Other,
}

impl ActorType {
    pub const ALL: [ActorType; 8] = [
        ActorType::FootballClub,
        ActorType::Media,
        ActorType::PoliticianOrParty,
        ActorType::FanNews,
        ActorType::PoliticalUser,
        ActorType::ActivistGroup,
        ActorType::FootballFan,
        ActorType::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ActorType::PoliticianOrParty => "politician_or_party",
            ActorType::Media => "media",
            ActorType::FootballClub => "football_club",
            ActorType::FanNews => "fan_news",
            ActorType::PoliticalUser => "political_user",
            ActorType::ActivistGroup => "activist_group",
            ActorType::FootballFan => "football_fan",
            ActorType::Other => "other",
        }
    }
}

impl fmt::Display for ActorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UserProfile {
    pub user_id: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotation: Option<ActorType>,
}

/// Profiles keyed by user id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProfileSet {
    profiles: BTreeMap<String, UserProfile>,
}

impl ProfileSet {
    pub fn new(profiles: impl IntoIterator<Item = UserProfile>) -> Result<Self, IngestError> {
        let mut set = ProfileSet::default();
        for p in profiles {
            set.insert(p)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, profile: UserProfile) -> Result<(), IngestError> {
        if self.profiles.contains_key(&profile.user_id) {
            return Err(IngestError::DuplicateProfile(profile.user_id));
        }
        self.profiles.insert(profile.user_id.clone(), profile);
        Ok(())
    }

    pub fn get(&self, user_id: &str) -> Option<&UserProfile> {
        self.profiles.get(user_id)
    }

    /// Annotated actor type, `Other` when unknown.
    pub fn actor_type(&self, user_id: &str) -> ActorType {
        self.get(user_id)
            .and_then(|p| p.annotation)
            .unwrap_or(ActorType::Other)
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &UserProfile> {
        self.profiles.values()
    }

    /// Reads JSON-lines profiles. Unlike the corpus reader this is strict:
    /// any bad line, unknown actor label or repeated id is an error.
    pub fn read<R: BufRead>(reader: R) -> Result<Self, IngestError> {
        let mut set = ProfileSet::default();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let profile: UserProfile =
                serde_json::from_str(&line).map_err(|e| IngestError::Profile {
                    line: idx + 1,
                    message: e.to_string(),
                })?;
            set.insert(profile)?;
        }
        Ok(set)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, IngestError> {
        let file = std::fs::File::open(path)?;
        Self::read(std::io::BufReader::new(file))
    }
}
