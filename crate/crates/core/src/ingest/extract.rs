use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::lexicon::Lexicon;
use super::record::{TweetKind, TweetRecord};

/// The political subset of a corpus and how it was assembled.
#[derive(Debug, Clone, Default)]
pub struct Extraction {
    /// Selected records in corpus order, one per tweet id.
    pub records: Vec<TweetRecord>,
    pub stats: ExtractionStats,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExtractionStats {
    pub input_records: usize,
    pub duplicate_ids: usize,
    pub political: usize,
    /// Non-political parents pulled in because a political quote or reply
    /// points at them.
    pub context_parents: usize,
    /// Parent ids referenced by political quotes/replies but absent from
    /// the corpus.
    pub missing_parents: Vec<String>,
}

/// Selects political records plus the direct parents of political quotes
/// and replies. Replies *to* political posts are kept only if they are
/// political themselves.
pub fn extract_political_subset(corpus: &[TweetRecord], lexicon: &Lexicon) -> Extraction {
    let mut index: HashMap<&str, usize> = HashMap::with_capacity(corpus.len());
    let mut duplicate = vec![false; corpus.len()];
    for (i, record) in corpus.iter().enumerate() {
        if index.contains_key(record.tweet_id.as_str()) {
            duplicate[i] = true;
        } else {
            index.insert(&record.tweet_id, i);
        }
    }

    let political: Vec<bool> = corpus
        .par_iter()
        .zip(duplicate.par_iter())
        .map(|(record, &dup)| !dup && lexicon.classify(record).is_political)
        .collect();

    let mut selected = political.clone();
    let mut stats = ExtractionStats {
        input_records: corpus.len(),
        duplicate_ids: duplicate.iter().filter(|&&d| d).count(),
        political: political.iter().filter(|&&p| p).count(),
        ..Default::default()
    };
    for (record, _) in corpus.iter().zip(&political).filter(|(_, &p)| p) {
        if !matches!(record.kind, TweetKind::Quote | TweetKind::Reply) {
            continue;
        }
        let Some(parent_id) = record.target_tweet_id.as_deref() else {
            continue;
        };
        match index.get(parent_id) {
            Some(&p) => {
                if !selected[p] {
                    selected[p] = true;
                    stats.context_parents += 1;
                }
            }
            None => {
                tracing::debug!(parent = parent_id, child = %record.tweet_id, "parent not in corpus");
                stats.missing_parents.push(parent_id.to_string());
            }
        }
    }
    stats.missing_parents.sort();
    stats.missing_parents.dedup();

    let records = corpus
        .iter()
        .zip(&selected)
        .filter(|(_, &keep)| keep)
        .map(|(r, _)| r.clone())
        .collect();
    Extraction { records, stats }
}
