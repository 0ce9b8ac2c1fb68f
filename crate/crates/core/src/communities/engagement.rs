use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::themes::{Theme, ThemeAssignment};
use crate::graphs::BipartiteMatrix;
use crate::scalar::Scalar;

pub const DEFAULT_MIN_COMMUNITY_SIZE: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sector {
    pub hashtag_community: usize,
    pub theme: Option<Theme>,
    pub count: u64,
}

/// Hashtag engagement of one user community.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngagementProfile {
    pub user_community: usize,
    pub size: usize,
    pub total: u64,
    /// Nonzero sectors ordered by hashtag community.
    pub sectors: Vec<Sector>,
}

/// Sums matrix counts between each user community and each hashtag
/// community. User communities smaller than `min_community_size` are left
/// out. Partition nodes missing from the matrix are skipped.
pub fn engagement_profile<T: Scalar>(
    user_partition: &Partition<T>,
    hashtag_partition: &Partition<T>,
    matrix: &BipartiteMatrix,
    themes: Option<&ThemeAssignment>,
    min_community_size: usize,
) -> Vec<EngagementProfile> {
    let mut hashtag_comm = vec![None; matrix.n_hashtags()];
    for (node, &c) in hashtag_partition.nodes.iter().zip(&hashtag_partition.assignment) {
        match matrix.hashtag_index(node) {
            Some(h) => hashtag_comm[h] = Some(c),
            None => tracing::warn!(hashtag = %node, "hashtag community member absent from matrix"),
        }
    }
    let sizes = user_partition.sizes();
    let mut totals: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for (node, &c) in user_partition.nodes.iter().zip(&user_partition.assignment) {
        if sizes[c] < min_community_size {
            continue;
        }
        let Some(u) = matrix.user_index(node) else {
            tracing::warn!(user = %node, "user community member absent from matrix");
            continue;
        };
        let sectors = totals.entry(c).or_default();
        for &(h, count) in matrix.row(u) {
            if let Some(hc) = hashtag_comm[h] {
                *sectors.entry(hc).or_default() += count;
            }
        }
    }
    totals
        .into_iter()
        .map(|(c, sectors)| {
            let sectors: Vec<Sector> = sectors
                .into_iter()
                .filter(|&(_, count)| count > 0)
                .map(|(hc, count)| Sector {
                    hashtag_community: hc,
                    theme: themes.and_then(|t| t.themes.get(&hc).copied()),
                    count,
                })
                .collect();
            EngagementProfile {
                user_community: c,
                size: sizes[c],
                total: sectors.iter().map(|s| s.count).sum(),
                sectors,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partition(nodes: &[&str], assignment: &[usize]) -> Partition<f64> {
        Partition {
            nodes: nodes.iter().map(|s| s.to_string()).collect(),
            assignment: assignment.to_vec(),
            modularity: 0.0,
            resolution: 1.0,
            seed: 0,
            levels: vec![],
        }
    }

    fn matrix() -> BipartiteMatrix {
        BipartiteMatrix::from_triplets([
            ("u1", "brexit", 3u64),
            ("u1", "mufc", 1),
            ("u2", "brexit", 2),
            ("u3", "mufc", 5),
        ])
    }

    #[test]
    fn sectors_sum_matrix_cells() {
        let users = partition(&["u1", "u2", "u3"], &[0, 0, 1]);
        let tags = partition(&["brexit", "mufc"], &[0, 1]);
        let profiles = engagement_profile(&users, &tags, &matrix(), None, 1);
        assert_eq!(profiles.len(), 2);
        assert_eq!(profiles[0].sectors.iter().map(|s| (s.hashtag_community, s.count)).collect::<Vec<_>>(), vec![(0, 5), (1, 1)]);
        assert_eq!(profiles[1].sectors.iter().map(|s| (s.hashtag_community, s.count)).collect::<Vec<_>>(), vec![(1, 5)]);
        let total: u64 = profiles.iter().map(|p| p.total).sum();
        assert_eq!(total, matrix().total());
    }

    #[test]
    fn small_communities_are_dropped() {
        let users = partition(&["u1", "u2", "u3"], &[0, 0, 1]);
        let tags = partition(&["brexit", "mufc"], &[0, 1]);
        let profiles = engagement_profile(&users, &tags, &matrix(), None, 2);
        assert_eq!(profiles.len(), 1);
        assert_eq!(profiles[0].user_community, 0);
    }

    #[test]
    fn empty_matrix_gives_no_profiles() {
        let empty = BipartiteMatrix::from_triplets(Vec::<(String, String, u64)>::new());
        let p = partition(&[], &[]);
        assert!(engagement_profile(&p, &p, &empty, None, 0).is_empty());
    }
}
