use std::collections::HashMap;

use crate::ingest::{TweetKind, TweetRecord};

/// Lookup tables over a corpus slice.
#[derive(Debug)]
pub struct CorpusIndex<'a> {
    corpus: &'a [TweetRecord],
    by_id: HashMap<&'a str, usize>,
    by_user: HashMap<&'a str, Vec<usize>>,
    responses: HashMap<&'a str, Vec<usize>>,
}

impl<'a> CorpusIndex<'a> {
    pub fn new(corpus: &'a [TweetRecord]) -> Self {
        let mut by_id = HashMap::with_capacity(corpus.len());
        let mut by_user: HashMap<&str, Vec<usize>> = HashMap::new();
        let mut responses: HashMap<&str, Vec<usize>> = HashMap::new();
        for (i, t) in corpus.iter().enumerate() {
            by_id.entry(t.tweet_id.as_str()).or_insert(i);
            by_user.entry(t.user_id.as_str()).or_default().push(i);
            if let Some(target) = &t.target_tweet_id {
                responses.entry(target.as_str()).or_default().push(i);
            }
        }
        CorpusIndex { corpus, by_id, by_user, responses }
    }

    pub fn corpus(&self) -> &'a [TweetRecord] {
        self.corpus
    }

    pub fn tweet(&self, tweet_id: &str) -> Option<&'a TweetRecord> {
        self.by_id.get(tweet_id).map(|&i| &self.corpus[i])
    }

    /// Tweets authored by `user_id`, in corpus order.
    pub fn by_user(&self, user_id: &str) -> impl Iterator<Item = &'a TweetRecord> + '_ {
        self.by_user.get(user_id).into_iter().flatten().map(|&i| &self.corpus[i])
    }

    /// Retweets, quotes or replies pointing at `tweet_id`.
    pub fn responses(&self, tweet_id: &str, kind: TweetKind) -> impl Iterator<Item = &'a TweetRecord> + '_ {
        self.responses
            .get(tweet_id)
            .into_iter()
            .flatten()
            .map(|&i| &self.corpus[i])
            .filter(move |t| t.kind == kind)
    }
}
