use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::CommunityError;
use crate::graphs::{Annotations, NodeCategory};
use crate::scalar::Scalar;

pub const DEFAULT_THEME_COUNT: usize = 4;

/// Discourse theme of a group of hashtag communities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theme {
    Political,
    Football,
    UkLocation,
    Other,
}

impl Theme {
    pub fn as_str(self) -> &'static str {
        match self {
            Theme::Political => "political",
            Theme::Football => "football",
            Theme::UkLocation => "uk_location",
            Theme::Other => "other",
        }
    }
}

impl fmt::Display for Theme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<NodeCategory> for Theme {
    fn from(c: NodeCategory) -> Self {
        match c {
            NodeCategory::Political => Theme::Political,
            NodeCategory::Football => Theme::Football,
            NodeCategory::Location => Theme::UkLocation,
            NodeCategory::Other => Theme::Other,
        }
    }
}

/// Category mix of one community's members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositionVector {
    pub community: usize,
    pub size: usize,
    /// Nonzero fractions only.
    pub proportions: BTreeMap<NodeCategory, f64>,
}

impl CompositionVector {
    /// Dense proportions in [`NodeCategory::ALL`] order.
    pub fn dense(&self) -> [f64; 4] {
        let mut v = [0.0; 4];
        for (c, p) in &self.proportions {
            v[c.index()] = *p;
        }
        v
    }
}

pub fn community_composition<T: Scalar>(partition: &Partition<T>, annotations: &Annotations) -> Vec<CompositionVector> {
    partition
        .members()
        .into_iter()
        .enumerate()
        .map(|(community, members)| {
            let mut counts: BTreeMap<NodeCategory, usize> = BTreeMap::new();
            for &i in &members {
                *counts.entry(annotations.category(&partition.nodes[i])).or_default() += 1;
            }
            let size = members.len();
            let proportions = counts.into_iter().map(|(c, k)| (c, k as f64 / size as f64)).collect();
            CompositionVector { community, size, proportions }
        })
        .collect()
}

/// One agglomeration step. Leaves are `0..n`; the cluster formed at step
/// `i` gets id `n + i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThemeAssignment {
    pub k: usize,
    /// Community id to theme.
    pub themes: BTreeMap<usize, Theme>,
    /// Flat cluster of each input vector, numbered by first appearance.
    pub clusters: Vec<usize>,
    pub cluster_themes: Vec<Theme>,
    pub dendrogram: Vec<Merge>,
}

fn squared_distance(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Ward-linkage clustering of composition vectors cut at `k` clusters.
///
/// Each cluster takes the category with the highest mean proportion among
/// its members; a tie for the maximum yields `other`.
pub fn ward_cluster(vectors: &[CompositionVector], k: usize) -> Result<ThemeAssignment, CommunityError> {
    let n = vectors.len();
    if k == 0 || n < k {
        return Err(CommunityError::TooFewVectors { needed: k.max(1), got: n });
    }
    let points: Vec<[f64; 4]> = vectors.iter().map(CompositionVector::dense).collect();

    // Lance–Williams updates on squared Euclidean distances.
    let mut dist = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = squared_distance(&points[i], &points[j]);
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    let mut active: Vec<bool> = vec![true; n];
    let mut size: Vec<usize> = vec![1; n];
    let mut slot_id: Vec<usize> = (0..n).collect();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut dendrogram = Vec::with_capacity(n.saturating_sub(1));

    for step in 0..n.saturating_sub(1) {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..n {
            if !active[i] {
                continue;
            }
            for j in i + 1..n {
                if active[j] && best.map_or(true, |(_, _, d)| dist[i][j] < d) {
                    best = Some((i, j, dist[i][j]));
                }
            }
        }
        let (a, b, d_ab) = best.expect("at least two active clusters");
        let (na, nb) = (size[a] as f64, size[b] as f64);
        for c in 0..n {
            if !active[c] || c == a || c == b {
                continue;
            }
            let nc = size[c] as f64;
            let d = ((na + nc) * dist[a][c] + (nb + nc) * dist[b][c] - nc * d_ab) / (na + nb + nc);
            dist[a][c] = d;
            dist[c][a] = d;
        }
        let (lo, hi) = (slot_id[a].min(slot_id[b]), slot_id[a].max(slot_id[b]));
        dendrogram.push(Merge { left: lo, right: hi, height: d_ab.max(0.0).sqrt(), size: size[a] + size[b] });
        if step < n - k {
            parent[b] = a;
        }
        active[b] = false;
        size[a] += size[b];
        slot_id[a] = n + step;
    }

    fn root(parent: &[usize], mut i: usize) -> usize {
        while parent[i] != i {
            i = parent[i];
        }
        i
    }
    let roots: Vec<usize> = (0..n).map(|i| root(&parent, i)).collect();
    let clusters = super::partition::dense_labels(&roots);
    let cluster_count = clusters.iter().max().map_or(0, |&c| c + 1);

    let mut sums = vec![[0.0f64; 4]; cluster_count];
    let mut counts = vec![0usize; cluster_count];
    for (p, &c) in points.iter().zip(&clusters) {
        for (s, x) in sums[c].iter_mut().zip(p) {
            *s += x;
        }
        counts[c] += 1;
    }
    let cluster_themes: Vec<Theme> = sums
        .iter()
        .zip(&counts)
        .map(|(s, &cnt)| {
            let mean: Vec<f64> = s.iter().map(|x| x / cnt as f64).collect();
            let max = mean.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let winners: Vec<usize> = (0..4).filter(|&i| mean[i] == max).collect();
            if winners.len() == 1 {
                NodeCategory::ALL[winners[0]].into()
            } else {
                Theme::Other
            }
        })
        .collect();
    let themes = vectors.iter().zip(&clusters).map(|(v, &c)| (v.community, cluster_themes[c])).collect();
    Ok(ThemeAssignment { k, themes, clusters, cluster_themes, dendrogram })
}
