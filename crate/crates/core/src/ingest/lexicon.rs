use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::normalize::{fold_text, normalize_hashtag, normalize_term, word_matches};
use super::record::TweetRecord;
use super::IngestError;

/// On-disk lexicon layout.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexiconFile {
    pub hashtags: Vec<String>,
    pub keywords: Vec<String>,
    #[serde(default)]
    pub excluded: Vec<String>,
}

/// Curated political vocabulary.
///
/// Hashtags match a record's normalised hashtag list. Keywords match the
/// folded text on word boundaries. Excluded terms never match: an excluded
/// hashtag is ignored and any keyword hit that falls inside an occurrence of
/// an excluded phrase is discarded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    hashtags: BTreeSet<String>,
    keywords: BTreeSet<String>,
    excluded: BTreeSet<String>,
}

/// Outcome of matching one record against a lexicon.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Classification {
    pub is_political: bool,
    pub matched_terms: Vec<String>,
}

impl Lexicon {
    pub fn new<H, K, E>(hashtags: H, keywords: K, excluded: E) -> Result<Self, IngestError>
    where
        H: IntoIterator,
        H::Item: AsRef<str>,
        K: IntoIterator,
        K::Item: AsRef<str>,
        E: IntoIterator,
        E::Item: AsRef<str>,
    {
        let mut lexicon = Lexicon::default();
        for tag in hashtags {
            let tag = tag.as_ref();
            let norm = normalize_hashtag(tag)
                .map_err(|_| IngestError::Lexicon(format!("empty hashtag entry {tag:?}")))?;
            lexicon.hashtags.insert(norm);
        }
        for kw in keywords {
            let kw = kw.as_ref();
            let norm = normalize_term(kw)
                .ok_or_else(|| IngestError::Lexicon(format!("empty keyword entry {kw:?}")))?;
            lexicon.keywords.insert(norm);
        }
        for term in excluded {
            let term = term.as_ref();
            let norm = normalize_term(term.trim_start_matches('#'))
                .ok_or_else(|| IngestError::Lexicon(format!("empty excluded entry {term:?}")))?;
            lexicon.excluded.insert(norm);
        }
        if let Some(clash) = lexicon.hashtags.intersection(&lexicon.excluded).next() {
            return Err(IngestError::Lexicon(format!(
                "{clash:?} is both a hashtag and an excluded term"
            )));
        }
        if let Some(clash) = lexicon.keywords.intersection(&lexicon.excluded).next() {
            return Err(IngestError::Lexicon(format!(
                "{clash:?} is both a keyword and an excluded term"
            )));
        }
        Ok(lexicon)
    }

    pub fn from_file(file: LexiconFile) -> Result<Self, IngestError> {
        Self::new(file.hashtags, file.keywords, file.excluded)
    }

    pub fn from_json(json: &str) -> Result<Self, IngestError> {
        let file: LexiconFile =
            serde_json::from_str(json).map_err(|e| IngestError::Lexicon(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, IngestError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_file(&self) -> LexiconFile {
        LexiconFile {
            hashtags: self.hashtags.iter().cloned().collect(),
            keywords: self.keywords.iter().cloned().collect(),
            excluded: self.excluded.iter().cloned().collect(),
        }
    }

    pub fn hashtags(&self) -> &BTreeSet<String> {
        &self.hashtags
    }

    pub fn keywords(&self) -> &BTreeSet<String> {
        &self.keywords
    }

    pub fn excluded(&self) -> &BTreeSet<String> {
        &self.excluded
    }

    pub fn is_political_hashtag(&self, token: &str) -> bool {
        self.hashtags.contains(token) && !self.excluded.contains(token)
    }

    /// Classifies a record. Total: never fails.
    pub fn classify(&self, tweet: &TweetRecord) -> Classification {
        let mut matched = BTreeSet::new();
        for tag in &tweet.hashtags {
            if self.is_political_hashtag(tag) {
                matched.insert(tag.clone());
            }
        }
        if !self.keywords.is_empty() {
            let folded = fold_text(&tweet.text);
            let masked: Vec<(usize, usize)> = self
                .excluded
                .iter()
                .flat_map(|term| word_matches(&folded, term))
                .collect();
            for kw in &self.keywords {
                let hit = word_matches(&folded, kw)
                    .into_iter()
                    .any(|(s, e)| !masked.iter().any(|&(ms, me)| s < me && ms < e));
                if hit {
                    matched.insert(kw.clone());
                }
            }
        }
        Classification {
            is_political: !matched.is_empty(),
            matched_terms: matched.into_iter().collect(),
        }
    }
}

/// Free-function form of [`Lexicon::classify`].
pub fn classify_political(tweet: &TweetRecord, lexicon: &Lexicon) -> Classification {
    lexicon.classify(tweet)
}
