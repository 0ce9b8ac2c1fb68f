use std::collections::BTreeSet;
use std::fmt;
use std::io::BufRead;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::normalize::normalize_hashtag;
use super::IngestError;

/// How a post relates to other posts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TweetKind {
    Original,
    Retweet,
    Quote,
    Reply,
}

impl TweetKind {
    pub const ALL: [TweetKind; 4] = [
        TweetKind::Original,
        TweetKind::Retweet,
        TweetKind::Quote,
        TweetKind::Reply,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TweetKind::Original => "original",
            TweetKind::Retweet => "retweet",
            TweetKind::Quote => "quote",
            TweetKind::Reply => "reply",
        }
    }
}

impl fmt::Display for TweetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One post. Field order here is the on-disk field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TweetRecord {
    pub tweet_id: String,
    pub user_id: String,
    pub timestamp: DateTime<Utc>,
    pub text: String,
    #[serde(default)]
    pub hashtags: Vec<String>,
    pub kind: TweetKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_tweet_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_user_id: Option<String>,
    #[serde(default)]
    pub mentioned_user_ids: Vec<String>,
}

impl TweetRecord {
    /// Normalises and deduplicates the hashtag list in place, keeping the
    /// first occurrence order. Tokens that normalise to nothing are dropped.
    pub fn normalize_hashtags(&mut self) {
        let mut seen = BTreeSet::new();
        let raw = std::mem::take(&mut self.hashtags);
        for tag in raw {
            if let Ok(token) = normalize_hashtag(&tag) {
                if seen.insert(token.clone()) {
                    self.hashtags.push(token);
                }
            }
        }
    }

    /// Checks the structural invariants of a record.
    pub fn validate(&self) -> Result<(), String> {
        if self.tweet_id.is_empty() {
            return Err("empty tweet_id".into());
        }
        if self.user_id.is_empty() {
            return Err("empty user_id".into());
        }
        match (self.kind, &self.target_tweet_id) {
            (TweetKind::Original, Some(_)) => {
                return Err("original tweet carries a target_tweet_id".into())
            }
            (kind, None) if kind != TweetKind::Original => {
                return Err(format!("{kind} without target_tweet_id"))
            }
            _ => {}
        }
        let mut seen = BTreeSet::new();
        for tag in &self.hashtags {
            match normalize_hashtag(tag) {
                Ok(norm) if &norm == tag => {}
                _ => return Err(format!("hashtag {tag:?} is not normalised")),
            }
            if !seen.insert(tag) {
                return Err(format!("duplicate hashtag {tag:?}"));
            }
        }
        Ok(())
    }

    /// Parses one line of the record format, normalising hashtags.
    pub fn from_json_line(line: &str) -> Result<Self, String> {
        let mut record: TweetRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
        record.normalize_hashtags();
        record.validate()?;
        Ok(record)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialisation cannot fail")
    }

    pub fn is_interaction(&self) -> bool {
        self.kind != TweetKind::Original
    }
}

/// A line that could not be turned into a record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MalformedLine {
    pub line: usize,
    pub reason: String,
}

/// Records read from a stream, plus what was skipped.
#[derive(Debug, Clone, Default)]
pub struct ParsedStream {
    pub records: Vec<TweetRecord>,
    pub malformed: Vec<MalformedLine>,
}

impl ParsedStream {
    pub fn skipped(&self) -> usize {
        self.malformed.len()
    }
}

/// Reads newline-delimited records. Blank lines are ignored. Malformed lines
/// are collected rather than fatal, unless they make up more than half of
/// the non-blank lines.
pub fn parse_stream<R: BufRead>(reader: R) -> Result<ParsedStream, IngestError> {
    let mut parsed = ParsedStream::default();
    let mut total = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        total += 1;
        match TweetRecord::from_json_line(&line) {
            Ok(record) => parsed.records.push(record),
            Err(reason) => {
                tracing::debug!(line = idx + 1, %reason, "skipping malformed record");
                parsed.malformed.push(MalformedLine {
                    line: idx + 1,
                    reason,
                });
            }
        }
    }
    if parsed.malformed.len() * 2 > total {
        return Err(IngestError::CorpusFormat {
            malformed: parsed.malformed.len(),
            total,
        });
    }
    Ok(parsed)
}

/// Writes records in the line format.
pub fn write_records<'a, W, I>(mut writer: W, records: I) -> std::io::Result<()>
where
    W: std::io::Write,
    I: IntoIterator<Item = &'a TweetRecord>,
{
    for record in records {
        writer.write_all(record.to_json_line().as_bytes())?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORIGINAL: &str = r#"{"tweet_id":"1","user_id":"a","timestamp":"2016-07-25T10:00:00Z","text":"hello #Brexit","hashtags":["brexit"],"kind":"original","mentioned_user_ids":[]}"#;
    const RETWEET: &str = r#"{"tweet_id":"2","user_id":"b","timestamp":"2016-07-25T10:05:00Z","text":"RT @a: hello #Brexit","hashtags":["brexit"],"kind":"retweet","target_tweet_id":"1","target_user_id":"a","mentioned_user_ids":["a"]}"#;
    const REPLY: &str = r#"{"tweet_id":"3","user_id":"c","timestamp":"2016-07-25T11:00:00Z","text":"@a no","hashtags":[],"kind":"reply","target_tweet_id":"1","target_user_id":"a","mentioned_user_ids":["a"]}"#;

    #[test]
    fn three_valid_lines() {
        let input = format!("{ORIGINAL}\n{RETWEET}\n{REPLY}\n");
        let parsed = parse_stream(input.as_bytes()).unwrap();
        assert_eq!(parsed.records.len(), 3);
        assert_eq!(parsed.skipped(), 0);
        assert_eq!(parsed.records[1].kind, TweetKind::Retweet);
    }

    #[test]
    fn malformed_line_is_counted() {
        let input = format!("{ORIGINAL}\n{{not json\n{REPLY}\n");
        let parsed = parse_stream(input.as_bytes()).unwrap();
        assert_eq!(parsed.records.len(), 2);
        assert_eq!(parsed.skipped(), 1);
        assert_eq!(parsed.malformed[0].line, 2);
    }

    #[test]
    fn mostly_malformed_is_fatal() {
        let input = format!("{ORIGINAL}\nx\ny\n");
        assert!(matches!(
            parse_stream(input.as_bytes()),
            Err(IngestError::CorpusFormat { malformed: 2, total: 3 })
        ));
    }

    #[test]
    fn kind_target_invariant_enforced() {
        let bad = ORIGINAL.replace(r#""kind":"original""#, r#""kind":"original","target_tweet_id":"9""#);
        assert!(TweetRecord::from_json_line(&bad).is_err());
        let bad = REPLY.replace(r#""target_tweet_id":"1","#, "");
        assert!(TweetRecord::from_json_line(&bad).is_err());
        let bad = ORIGINAL.replace(r#""kind":"original""#, r#""kind":"like""#);
        assert!(TweetRecord::from_json_line(&bad).is_err());
    }

    #[test]
    fn hashtags_are_normalised_on_read() {
        let raw = ORIGINAL.replace(r#"["brexit"]"#, r##"["#Brexit","brexit","#"]"##);
        let record = TweetRecord::from_json_line(&raw).unwrap();
        assert_eq!(record.hashtags, vec!["brexit"]);
    }

    #[test]
    fn canonical_lines_round_trip() {
        for line in [ORIGINAL, RETWEET, REPLY] {
            let record = TweetRecord::from_json_line(line).unwrap();
            assert_eq!(record.to_json_line(), line);
        }
    }
}
