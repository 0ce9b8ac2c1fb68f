use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::GraphError;
use crate::ingest::TweetRecord;

/// Default minimum corpus-wide uses for a hashtag column to be kept.
pub const DEFAULT_MIN_HASHTAG_USES: u64 = 20;
/// Default minimum number of tweets for a user row to be kept.
pub const DEFAULT_MIN_USER_TWEETS: u64 = 2;

/// Sparse user x hashtag count matrix. Users and hashtags are sorted; each
/// row holds `(column, count)` pairs in column order with counts > 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteMatrix {
    users: Vec<String>,
    hashtags: Vec<String>,
    rows: Vec<Vec<(usize, u64)>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Triplet {
    user: String,
    hashtag: String,
    count: u64,
}

impl BipartiteMatrix {
    /// Builds a matrix from `(user, hashtag, count)` triplets. Repeated cells
    /// add up; zero counts are ignored.
    pub fn from_triplets<U, H>(cells: impl IntoIterator<Item = (U, H, u64)>) -> Self
    where
        U: Into<String>,
        H: Into<String>,
    {
        let mut acc: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
        for (u, h, c) in cells {
            if c > 0 {
                *acc.entry(u.into()).or_default().entry(h.into()).or_default() += c;
            }
        }
        let hashtags: Vec<String> = acc
            .values()
            .flat_map(|r| r.keys().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let col = |h: &str| hashtags.binary_search_by(|x| x.as_str().cmp(h)).expect("known hashtag");
        let rows = acc
            .values()
            .map(|r| r.iter().map(|(h, &c)| (col(h), c)).collect())
            .collect();
        BipartiteMatrix {
            users: acc.into_keys().collect(),
            hashtags,
            rows,
        }
    }

    pub fn users(&self) -> &[String] {
        &self.users
    }

    pub fn hashtags(&self) -> &[String] {
        &self.hashtags
    }

    pub fn row(&self, user: usize) -> &[(usize, u64)] {
        &self.rows[user]
    }

    pub fn n_users(&self) -> usize {
        self.users.len()
    }

    pub fn n_hashtags(&self) -> usize {
        self.hashtags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.users.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, user: usize, hashtag: usize) -> u64 {
        self.rows[user]
            .binary_search_by_key(&hashtag, |&(c, _)| c)
            .map(|i| self.rows[user][i].1)
            .unwrap_or(0)
    }

    pub fn user_index(&self, id: &str) -> Option<usize> {
        self.users.binary_search_by(|x| x.as_str().cmp(id)).ok()
    }

    pub fn hashtag_index(&self, tag: &str) -> Option<usize> {
        self.hashtags.binary_search_by(|x| x.as_str().cmp(tag)).ok()
    }

    pub fn total(&self) -> u64 {
        self.rows.iter().flatten().map(|&(_, c)| c).sum()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        let mut sums = vec![0; self.hashtags.len()];
        for &(c, n) in self.rows.iter().flatten() {
            sums[c] += n;
        }
        sums
    }

    /// Column vectors in the same sparse layout as rows.
    pub fn columns(&self) -> Vec<Vec<(usize, u64)>> {
        let mut cols = vec![Vec::new(); self.hashtags.len()];
        for (u, row) in self.rows.iter().enumerate() {
            for &(c, n) in row {
                cols[c].push((u, n));
            }
        }
        cols
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), GraphError> {
        let mut wtr = csv::Writer::from_writer(writer);
        for (u, row) in self.rows.iter().enumerate() {
            for &(c, count) in row {
                wtr.serialize(Triplet {
                    user: self.users[u].clone(),
                    hashtag: self.hashtags[c].clone(),
                    count,
                })
                .map_err(|e| GraphError::Format(e.to_string()))?;
            }
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self, GraphError> {
        let mut rdr = csv::Reader::from_reader(reader);
        let mut cells = Vec::new();
        for row in rdr.deserialize::<Triplet>() {
            let t = row.map_err(|e| GraphError::Format(e.to_string()))?;
            cells.push((t.user, t.hashtag, t.count));
        }
        Ok(Self::from_triplets(cells))
    }
}

/// Builds the filtered user x hashtag matrix.
///
/// `counts[u][h]` is the number of `u`'s records carrying `h`. Hashtags with
/// fewer than `min_hashtag_uses` uses are dropped, then users with fewer than
/// `min_user_tweets` records that still carry a retained hashtag; both
/// filters repeat until neither removes anything, so on return every column
/// sum and every user's record count satisfy the thresholds.
pub fn build_user_hashtag_matrix(
    corpus: &[TweetRecord],
    min_hashtag_uses: u64,
    min_user_tweets: u64,
) -> BipartiteMatrix {
    let users: Vec<&str> = corpus
        .iter()
        .filter(|r| !r.hashtags.is_empty())
        .map(|r| r.user_id.as_str())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let tags: Vec<&str> = corpus
        .iter()
        .flat_map(|r| r.hashtags.iter().map(String::as_str))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let user_ix = |u: &str| users.binary_search(&u).expect("known user");
    let tag_ix = |t: &str| tags.binary_search(&t).expect("known tag");

    // (user, hashtag columns) per record that carries hashtags
    let records: Vec<(usize, Vec<usize>)> = corpus
        .iter()
        .filter(|r| !r.hashtags.is_empty())
        .map(|r| {
            let mut cols: Vec<usize> = r.hashtags.iter().map(|t| tag_ix(t)).collect();
            cols.sort_unstable();
            cols.dedup();
            (user_ix(&r.user_id), cols)
        })
        .collect();

    let mut user_alive = vec![true; users.len()];
    let mut tag_alive = vec![true; tags.len()];
    loop {
        let mut changed = false;

        let mut col_sum = vec![0u64; tags.len()];
        for (u, cols) in &records {
            if user_alive[*u] {
                for &c in cols {
                    col_sum[c] += 1;
                }
            }
        }
        for (c, alive) in tag_alive.iter_mut().enumerate() {
            if *alive && col_sum[c] < min_hashtag_uses.max(1) {
                *alive = false;
                changed = true;
            }
        }

        let mut user_tweets = vec![0u64; users.len()];
        for (u, cols) in &records {
            if cols.iter().any(|&c| tag_alive[c]) {
                user_tweets[*u] += 1;
            }
        }
        for (u, alive) in user_alive.iter_mut().enumerate() {
            if *alive && user_tweets[u] < min_user_tweets.max(1) {
                *alive = false;
                changed = true;
            }
        }

        if !changed {
            break;
        }
    }

    let kept_users: Vec<usize> = (0..users.len()).filter(|&u| user_alive[u]).collect();
    let kept_tags: Vec<usize> = (0..tags.len()).filter(|&t| tag_alive[t]).collect();
    let mut new_user = vec![usize::MAX; users.len()];
    for (i, &u) in kept_users.iter().enumerate() {
        new_user[u] = i;
    }
    let mut new_tag = vec![usize::MAX; tags.len()];
    for (i, &t) in kept_tags.iter().enumerate() {
        new_tag[t] = i;
    }

    let mut rows: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); kept_users.len()];
    for (u, cols) in &records {
        if !user_alive[*u] {
            continue;
        }
        for &c in cols {
            if tag_alive[c] {
                *rows[new_user[*u]].entry(new_tag[c]).or_default() += 1;
            }
        }
    }

    BipartiteMatrix {
        users: kept_users.iter().map(|&u| users[u].to_string()).collect(),
        hashtags: kept_tags.iter().map(|&t| tags[t].to_string()).collect(),
        rows: rows.into_iter().map(|r| r.into_iter().collect()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::TweetKind;
    use chrono::{TimeZone, Utc};

    fn rec(user: &str, tags: &[&str]) -> TweetRecord {
        TweetRecord {
            tweet_id: String::new(),
            user_id: user.into(),
            timestamp: Utc.with_ymd_and_hms(2017, 1, 1, 0, 0, 0).unwrap(),
            text: String::new(),
            hashtags: tags.iter().map(|s| s.to_string()).collect(),
            kind: TweetKind::Original,
            target_tweet_id: None,
            target_user_id: None,
            mentioned_user_ids: vec![],
        }
    }

    #[test]
    fn hand_table_with_unit_thresholds() {
        // hand-set counts: a:(x=2,y=0) b:(x=1,y=1) c:(x=0,y=3)
        let corpus = vec![
            rec("a", &["x"]),
            rec("a", &["x"]),
            rec("b", &["x", "y"]),
            rec("c", &["y"]),
            rec("c", &["y"]),
            rec("c", &["y"]),
        ];
        let m = build_user_hashtag_matrix(&corpus, 1, 1);
        assert_eq!(m.users(), ["a", "b", "c"]);
        assert_eq!(m.hashtags(), ["x", "y"]);
        let table: Vec<Vec<u64>> = (0..3).map(|u| (0..2).map(|h| m.get(u, h)).collect()).collect();
        assert_eq!(table, vec![vec![2, 0], vec![1, 1], vec![0, 3]]);
        assert_eq!(m, BipartiteMatrix::from_triplets([("a", "x", 2), ("b", "x", 1), ("b", "y", 1), ("c", "y", 3)]));
    }

    #[test]
    fn single_tweet_user_excluded() {
        let mut corpus: Vec<_> = (0..25).map(|i| rec(&format!("u{}", i % 5), &["mufc"])).collect();
        corpus.push(rec("once", &["mufc"]));
        let m = build_user_hashtag_matrix(&corpus, 20, 2);
        assert_eq!(m.n_users(), 5);
        assert!(m.user_index("once").is_none());
    }

    #[test]
    fn nineteen_uses_drops_column() {
        let mut corpus: Vec<_> = (0..20).map(|i| rec(&format!("u{}", i % 4), &["mufc"])).collect();
        corpus.extend((0..19).map(|i| rec(&format!("u{}", i % 4), &["rare"])));
        let m = build_user_hashtag_matrix(&corpus, 20, 2);
        assert_eq!(m.hashtags(), ["mufc"]);
    }

    #[test]
    fn filters_reach_a_fixed_point() {
        // dropping "once" pulls "shared" below threshold, which in turn
        // leaves "b" with a single qualifying record
        let corpus = vec![
            rec("a", &["common"]),
            rec("a", &["common"]),
            rec("b", &["common"]),
            rec("b", &["shared"]),
            rec("once", &["shared"]),
        ];
        let m = build_user_hashtag_matrix(&corpus, 2, 2);
        assert_eq!(m.users(), ["a"]);
        assert_eq!(m.hashtags(), ["common"]);
        for s in m.column_sums() {
            assert!(s >= 2);
        }
    }

    #[test]
    fn empty_after_filtering() {
        let m = build_user_hashtag_matrix(&[rec("a", &["x"])], 20, 2);
        assert!(m.is_empty());
        assert_eq!(m.total(), 0);
    }

    #[test]
    fn csv_round_trip() {
        let m = BipartiteMatrix::from_triplets([("u1", "brexit", 3), ("u2", "mufc", 1), ("u2", "brexit", 2)]);
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        assert_eq!(BipartiteMatrix::read_csv(buf.as_slice()).unwrap(), m);
        assert_eq!(m.columns()[0], vec![(0, 3), (1, 2)]);
    }
}
