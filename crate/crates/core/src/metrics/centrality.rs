use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::graphs::WeightedGraph;
use crate::scalar::{Real, Scalar};

/// Edge lengths used for shortest paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathWeighting {
    /// Every edge has length 1.
    #[default]
    Unweighted,
    /// Edge length is `1 / weight`, so frequent interactions are close.
    InverseWeight,
}

const CHUNK: usize = 32;

/// Unnormalised shortest-path betweenness on the unweighted view.
///
/// Directed graphs count ordered pairs along directed paths. Undirected
/// graphs count each unordered pair once.
pub fn betweenness<T: Scalar>(graph: &WeightedGraph<T>) -> Vec<T> {
    betweenness_with(graph, PathWeighting::Unweighted)
}

pub fn betweenness_with<T: Scalar>(graph: &WeightedGraph<T>, weighting: PathWeighting) -> Vec<T> {
    let n = graph.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<T>> = match weighting {
        PathWeighting::Unweighted => {
            let adj = graph.successors();
            sources
                .par_chunks(CHUNK)
                .map(|chunk| {
                    let mut work = Workspace::new(n);
                    for &s in chunk {
                        work.bfs(&adj, s);
                        work.accumulate(s);
                    }
                    work.score
                })
                .collect()
        }
        PathWeighting::InverseWeight => {
            let adj: Vec<Vec<(usize, T)>> = graph
                .weighted_successors()
                .into_iter()
                .map(|list| list.into_iter().map(|(v, w)| (v, T::one() / w)).collect())
                .collect();
            sources
                .par_chunks(CHUNK)
                .map(|chunk| {
                    let mut work = Workspace::new(n);
                    for &s in chunk {
                        work.dijkstra(&adj, s);
                        work.accumulate(s);
                    }
                    work.score
                })
                .collect()
        }
    };
    let mut score = vec![T::zero(); n];
    for part in partials {
        for (acc, x) in score.iter_mut().zip(part) {
            *acc = acc.clone() + x;
        }
    }
    if !graph.is_directed() {
        let two = T::from_count(2);
        for x in &mut score {
            *x = x.clone() / two.clone();
        }
    }
    score
}

/// Per-thread buffers for Brandes' single-source passes.
struct Workspace<T> {
    order: Vec<usize>,
    preds: Vec<Vec<usize>>,
    sigma: Vec<T>,
    delta: Vec<T>,
    score: Vec<T>,
}

impl<T: Scalar> Workspace<T> {
    fn new(n: usize) -> Self {
        Workspace {
            order: Vec::with_capacity(n),
            preds: vec![Vec::new(); n],
            sigma: vec![T::zero(); n],
            delta: vec![T::zero(); n],
            score: vec![T::zero(); n],
        }
    }

    fn reset(&mut self) {
        for &v in &self.order {
            self.preds[v].clear();
            self.sigma[v] = T::zero();
            self.delta[v] = T::zero();
        }
        self.order.clear();
    }

    fn bfs(&mut self, adj: &[Vec<usize>], s: usize) {
        self.reset();
        let mut dist = vec![u32::MAX; adj.len()];
        let mut queue = VecDeque::new();
        dist[s] = 0;
        self.sigma[s] = T::one();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            self.order.push(v);
            for &w in &adj[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    self.sigma[w] = self.sigma[w].clone() + self.sigma[v].clone();
                    self.preds[w].push(v);
                }
            }
        }
    }

    fn dijkstra(&mut self, adj: &[Vec<(usize, T)>], s: usize) {
        self.reset();
        let n = adj.len();
        let mut dist: Vec<Option<T>> = vec![None; n];
        let mut settled = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[s] = Some(T::zero());
        self.sigma[s] = T::one();
        heap.push(HeapEntry { dist: T::zero(), node: s });
        while let Some(HeapEntry { dist: d, node: v }) = heap.pop() {
            if settled[v] {
                continue;
            }
            settled[v] = true;
            self.order.push(v);
            for (w, len) in &adj[v] {
                let w = *w;
                if settled[w] {
                    continue;
                }
                let alt = d.clone() + len.clone();
                match &dist[w] {
                    Some(cur) if alt > *cur => {}
                    Some(cur) if alt == *cur => {
                        self.sigma[w] = self.sigma[w].clone() + self.sigma[v].clone();
                        self.preds[w].push(v);
                    }
                    _ => {
                        dist[w] = Some(alt.clone());
                        self.sigma[w] = self.sigma[v].clone();
                        self.preds[w].clear();
                        self.preds[w].push(v);
                        heap.push(HeapEntry { dist: alt, node: w });
                    }
                }
            }
        }
        // Nodes reached but never settled cannot exist; unreachable ones
        // were never touched and carry zero sigma.
    }

    fn accumulate(&mut self, s: usize) {
        for &w in self.order.iter().rev() {
            let coeff = (T::one() + self.delta[w].clone()) / self.sigma[w].clone();
            for &v in &self.preds[w] {
                let add = self.sigma[v].clone() * coeff.clone();
                self.delta[v] = self.delta[v].clone() + add;
            }
            if w != s {
                self.score[w] = self.score[w].clone() + self.delta[w].clone();
            }
        }
    }
}

struct HeapEntry<T> {
    dist: T,
    node: usize,
}

impl<T: PartialOrd> PartialEq for HeapEntry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: PartialOrd> Eq for HeapEntry<T> {}

impl<T: PartialOrd> PartialOrd for HeapEntry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: PartialOrd> Ord for HeapEntry<T> {
    // Min-heap on distance, then node index.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Distinct-neighbour in- or out-degree as a score vector.
pub fn degree_scores<T: Scalar>(graph: &WeightedGraph<T>, incoming: bool) -> Vec<T> {
    let deg = if incoming { graph.in_degrees() } else { graph.out_degrees() };
    deg.into_iter().map(|d| T::from_count(d as u64)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PageRankConfig {
    pub damping: f64,
    pub tolerance: f64,
    pub max_iters: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig { damping: 0.85, tolerance: 1e-9, max_iters: 200 }
    }
}

/// Weighted PageRank by power iteration.
///
/// Out-edge weights are transition proportions. Mass on nodes without
/// out-edges is spread uniformly. Undirected edges count in both
/// directions. Iteration stops once the L1 change drops below the
/// tolerance.
pub fn pagerank<T: Real>(graph: &WeightedGraph<T>, config: &PageRankConfig) -> Result<Vec<T>, MetricsError> {
    if !(0.0..1.0).contains(&config.damping) {
        return Err(MetricsError::Parameter(format!("damping {} outside [0, 1)", config.damping)));
    }
    if !(config.tolerance > 0.0) {
        return Err(MetricsError::Parameter(format!("tolerance {} must be positive", config.tolerance)));
    }
    let n = graph.node_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj = graph.weighted_successors();
    let out_weight: Vec<T> = adj.iter().map(|list| crate::scalar::sum(list.iter().map(|(_, w)| *w))).collect();
    let conv = |x: f64| T::from_f64(x).expect("representable");
    let d = conv(config.damping);
    let tol = conv(config.tolerance);
    let nt = T::from_count(n as u64);
    let teleport = (T::one() - d) / nt;

    let mut x = vec![T::one() / nt; n];
    let mut delta = T::infinity();
    for _ in 0..config.max_iters {
        let dangling = crate::scalar::sum((0..n).filter(|&u| adj[u].is_empty()).map(|u| x[u]));
        let base = teleport + d * dangling / nt;
        let mut next = vec![base; n];
        for u in 0..n {
            if adj[u].is_empty() {
                continue;
            }
            let share = d * x[u] / out_weight[u];
            for &(v, w) in &adj[u] {
                next[v] = next[v] + share * w;
            }
        }
        let total = crate::scalar::sum(next.iter().copied());
        for v in &mut next {
            *v = *v / total;
        }
        delta = crate::scalar::sum(next.iter().zip(&x).map(|(a, b)| (*a - *b).abs()));
        x = next;
        if delta < tol {
            return Ok(x);
        }
    }
    Err(MetricsError::NoConvergence {
        iterations: config.max_iters,
        delta: delta.to_f64_lossy(),
        last: x.iter().map(|v| v.to_f64_lossy()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn undirected(n: usize, edges: &[(usize, usize)]) -> WeightedGraph<f64> {
        WeightedGraph::from_unit_edges(false, n, edges).unwrap()
    }

    #[test]
    fn path_middle_node_has_betweenness_one() {
        assert_eq!(betweenness(&undirected(3, &[(0, 1), (1, 2)])), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn directed_path_counts_one_ordered_pair() {
        let g = WeightedGraph::<f64>::from_unit_edges(true, 3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(betweenness(&g), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn complete_graph_has_zero_betweenness() {
        let g = undirected(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(betweenness(&g).iter().all(|&b| b == 0.0));
    }

    #[test]
    fn square_splits_paths_exactly() {
        // Cycle of 4: each opposite pair has two geodesics.
        let g = WeightedGraph::<Rational>::from_unit_edges(false, 4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(betweenness(&g), vec![half.clone(); 4]);
    }

    #[test]
    fn inverse_weight_prefers_heavy_detour() {
        // 0-2 direct with weight 1 (length 1); 0-1-2 with weight 4 (length 0.5).
        let g = WeightedGraph::<f64>::from_edges(false, 3, &[(0, 2, 1.0), (0, 1, 4.0), (1, 2, 4.0)]).unwrap();
        assert_eq!(betweenness(&g), vec![0.0, 0.0, 0.0]);
        assert_eq!(betweenness_with(&g, PathWeighting::InverseWeight), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn pagerank_cycle_is_uniform() {
        let g = WeightedGraph::<f64>::from_unit_edges(true, 5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let pr = pagerank(&g, &PageRankConfig::default()).unwrap();
        for p in pr {
            assert!((p - 0.2).abs() < 1e-12);
        }
    }

    #[test]
    fn pagerank_two_nodes_matches_closed_form() {
        // x_a = (1-d)/2 + d·x_b/2 and x_a + x_b = 1 give x_a = 1/(2+d).
        let g = WeightedGraph::<f64>::from_unit_edges(true, 2, &[(0, 1)]).unwrap();
        let pr = pagerank(&g, &PageRankConfig::default()).unwrap();
        assert!((pr[0] - 1.0 / 2.85).abs() < 1e-9);
        assert!((pr[1] - 1.85 / 2.85).abs() < 1e-9);
    }

    #[test]
    fn pagerank_non_convergence_reports_last_iterate() {
        let g = WeightedGraph::<f64>::from_unit_edges(true, 3, &[(0, 1), (0, 2)]).unwrap();
        let config = PageRankConfig { max_iters: 1, tolerance: 1e-15, ..Default::default() };
        match pagerank(&g, &config) {
            Err(MetricsError::NoConvergence { iterations: 1, last, .. }) => {
                assert!((last.iter().sum::<f64>() - 1.0).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pagerank_rejects_bad_damping() {
        let g = WeightedGraph::<f64>::from_unit_edges(true, 2, &[(0, 1)]).unwrap();
        let config = PageRankConfig { damping: 1.0, ..Default::default() };
        assert!(matches!(pagerank(&g, &config), Err(MetricsError::Parameter(_))));
    }

    #[test]
    fn weights_shift_pagerank() {
        let g = WeightedGraph::<f64>::from_edges(true, 3, &[(0, 1, 9.0), (0, 2, 1.0)]).unwrap();
        let pr = pagerank(&g, &PageRankConfig::default()).unwrap();
        assert!(pr[1] > pr[2]);
    }
}
