//! Corpus ingestion: the record format, hashtag normalisation, lexicon
//! matching, political-subset extraction and descriptive summaries.

mod extract;
mod lexicon;
mod normalize;
mod profile;
mod record;
mod summary;

use std::path::Path;

pub use extract::{extract_political_subset, Extraction, ExtractionStats};
pub use lexicon::{classify_political, Classification, Lexicon, LexiconFile};
pub use normalize::{contains_word, fold_text, normalize_hashtag, word_matches};
pub use profile::{ActorType, ProfileSet, UserProfile};
pub use record::{parse_stream, write_records, MalformedLine, ParsedStream, TweetKind, TweetRecord};
pub use summary::{summarize, summarize_with, CorpusSummary, DateRange, HashtagCount, DEFAULT_TOP_HASHTAGS};

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("corpus format error: {malformed} of {total} lines are malformed")]
    CorpusFormat { malformed: usize, total: usize },
    #[error("hashtag {0:?} is empty after normalisation")]
    RejectedToken(String),
    #[error("invalid lexicon: {0}")]
    Lexicon(String),
    #[error("profile line {line}: {message}")]
    Profile { line: usize, message: String },
    #[error("duplicate profile for user {0:?}")]
    DuplicateProfile(String),
}

/// Reads a corpus file.
pub fn read_corpus(path: impl AsRef<Path>) -> Result<ParsedStream, IngestError> {
    let file = std::fs::File::open(path)?;
    parse_stream(std::io::BufReader::new(file))
}
