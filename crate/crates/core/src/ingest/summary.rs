use std::collections::{BTreeMap, BTreeSet, HashMap};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::lexicon::Lexicon;
use super::record::{TweetKind, TweetRecord};

/// Number of ranked hashtags reported by default.
pub const DEFAULT_TOP_HASHTAGS: usize = 15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DateRange {
    pub start: DateTime<Utc>,
    pub end: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HashtagCount {
    pub token: String,
    pub count: u64,
}

/// Descriptive statistics of a corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub total_tweets: u64,
    pub date_range: Option<DateRange>,
    pub unique_users: u64,
    pub count_by_kind: BTreeMap<TweetKind, u64>,
    /// Fraction of records per kind. All zero for an empty corpus.
    pub share_by_kind: BTreeMap<TweetKind, f64>,
    pub unique_hashtags: u64,
    /// Hashtags ranked by the number of records carrying them.
    pub top_hashtags: Vec<HashtagCount>,
    /// Ranked hashtags restricted to the lexicon's political hashtags.
    pub top_political_hashtags: Vec<HashtagCount>,
    pub political_keywords: Vec<String>,
}

pub fn summarize(corpus: &[TweetRecord]) -> CorpusSummary {
    summarize_with(corpus, None, DEFAULT_TOP_HASHTAGS)
}

pub fn summarize_with(
    corpus: &[TweetRecord],
    lexicon: Option<&Lexicon>,
    top_n: usize,
) -> CorpusSummary {
    let mut users = BTreeSet::new();
    let mut by_kind: BTreeMap<TweetKind, u64> = TweetKind::ALL.iter().map(|&k| (k, 0)).collect();
    let mut tags: HashMap<&str, u64> = HashMap::new();
    let mut range: Option<(DateTime<Utc>, DateTime<Utc>)> = None;

    for record in corpus {
        users.insert(record.user_id.as_str());
        *by_kind.entry(record.kind).or_default() += 1;
        for tag in &record.hashtags {
            *tags.entry(tag.as_str()).or_default() += 1;
        }
        range = Some(match range {
            None => (record.timestamp, record.timestamp),
            Some((lo, hi)) => (lo.min(record.timestamp), hi.max(record.timestamp)),
        });
    }

    let total = corpus.len() as u64;
    let share_by_kind = by_kind
        .iter()
        .map(|(&k, &c)| (k, if total == 0 { 0.0 } else { c as f64 / total as f64 }))
        .collect();

    let mut ranked: Vec<HashtagCount> = tags
        .iter()
        .map(|(&token, &count)| HashtagCount {
            token: token.to_string(),
            count,
        })
        .collect();
    ranked.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.token.cmp(&b.token)));

    let top_political_hashtags = match lexicon {
        Some(lex) => ranked
            .iter()
            .filter(|h| lex.is_political_hashtag(&h.token))
            .take(top_n)
            .cloned()
            .collect(),
        None => Vec::new(),
    };

    CorpusSummary {
        total_tweets: total,
        date_range: range.map(|(start, end)| DateRange { start, end }),
        unique_users: users.len() as u64,
        count_by_kind: by_kind,
        share_by_kind,
        unique_hashtags: tags.len() as u64,
        top_hashtags: ranked.into_iter().take(top_n).collect(),
        top_political_hashtags,
        political_keywords: lexicon
            .map(|l| l.keywords().iter().cloned().collect())
            .unwrap_or_default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::{Duration, TimeZone};

    fn rec(i: usize, user: &str, kind: TweetKind, tags: &[&str]) -> TweetRecord {
        TweetRecord {
            tweet_id: format!("t{i}"),
            user_id: user.into(),
            timestamp: Utc.with_ymd_and_hms(2016, 7, 25, 0, 0, 0).unwrap() + Duration::hours(i as i64),
            text: String::new(),
            hashtags: tags.iter().map(|s| s.to_string()).collect(),
            kind,
            target_tweet_id: (kind != TweetKind::Original).then(|| "t0".to_string()),
            target_user_id: None,
            mentioned_user_ids: vec![],
        }
    }

    #[test]
    fn one_of_each_kind() {
        let corpus: Vec<_> = TweetKind::ALL
            .iter()
            .enumerate()
            .map(|(i, &k)| rec(i, "a", k, &[]))
            .collect();
        let s = summarize(&corpus);
        for share in s.share_by_kind.values() {
            assert_eq!(*share, 0.25);
        }
        assert_eq!(s.unique_users, 1);
        assert_eq!(s.date_range.unwrap().end, corpus[3].timestamp);
    }

    #[test]
    fn single_tweet() {
        let s = summarize(&[rec(0, "a", TweetKind::Original, &["mufc"])]);
        assert_eq!((s.total_tweets, s.unique_users, s.unique_hashtags), (1, 1, 1));
    }

    #[test]
    fn empty_corpus_has_zero_counts() {
        let s = summarize(&[]);
        assert_eq!(s.total_tweets, 0);
        assert!(s.date_range.is_none());
        assert!(s.share_by_kind.values().all(|&v| v == 0.0));
    }

    #[test]
    fn ranking_breaks_ties_by_token() {
        let corpus = vec![
            rec(0, "a", TweetKind::Original, &["ukip", "brexit", "mufc"]),
            rec(1, "b", TweetKind::Original, &["brexit", "ukip"]),
            rec(2, "b", TweetKind::Original, &["brexit"]),
        ];
        let lex = Lexicon::new(["brexit", "ukip"], ["tory"], Vec::<&str>::new()).unwrap();
        let s = summarize_with(&corpus, Some(&lex), 2);
        let top: Vec<_> = s.top_hashtags.iter().map(|h| (h.token.as_str(), h.count)).collect();
        assert_eq!(top, vec![("brexit", 3), ("ukip", 2)]);
        assert_eq!(s.top_political_hashtags.len(), 2);
        assert_eq!(s.political_keywords, vec!["tory"]);
    }
}
