use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::partition::{dense_labels, Partition};
use super::CommunityError;
use crate::graphs::WeightedGraph;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LouvainConfig {
    pub resolution: f64,
    pub seed: u64,
}

impl Default for LouvainConfig {
    fn default() -> Self {
        LouvainConfig { resolution: 1.0, seed: 0 }
    }
}

/// Weighted Newman–Girvan modularity. Directed edges count as undirected
/// weight, so reciprocal edges add up.
pub fn modularity<T: Scalar>(graph: &WeightedGraph<T>, assignment: &[usize], resolution: T) -> Result<T, CommunityError> {
    if assignment.len() != graph.node_count() {
        return Err(CommunityError::AssignmentLength { expected: graph.node_count(), got: assignment.len() });
    }
    let mut internal: BTreeMap<usize, T> = BTreeMap::new();
    let mut degree: BTreeMap<usize, T> = BTreeMap::new();
    let mut m = T::zero();
    for (s, d, w) in graph.edges() {
        let (cs, cd) = (assignment[s], assignment[d]);
        m = m + w.clone();
        for c in [cs, cd] {
            let e = degree.entry(c).or_insert_with(T::zero);
            *e = e.clone() + w.clone();
        }
        if cs == cd {
            let e = internal.entry(cs).or_insert_with(T::zero);
            *e = e.clone() + w.clone();
        }
    }
    if m.is_zero() {
        return Ok(T::zero());
    }
    let two_m = m.clone() + m.clone();
    let mut q = T::zero();
    for (c, d) in degree {
        let frac = d / two_m.clone();
        let inside = internal.remove(&c).unwrap_or_else(T::zero) / m.clone();
        q = q + inside - resolution.clone() * frac.clone() * frac;
    }
    Ok(q)
}

/// [`modularity`] with the assignment keyed by node id.
pub fn modularity_by_id<T: Scalar>(
    graph: &WeightedGraph<T>,
    assignment: &BTreeMap<String, usize>,
    resolution: T,
) -> Result<T, CommunityError> {
    let dense = graph
        .node_ids()
        .map(|id| assignment.get(id).copied().ok_or_else(|| CommunityError::MissingNode(id.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    modularity(graph, &dense, resolution)
}

/// Aggregated graph: each node is a community of the level below.
struct Level<T> {
    adj: Vec<Vec<(usize, T)>>,
    loops: Vec<T>,
    degree: Vec<T>,
}

impl<T: Scalar> Level<T> {
    fn from_graph(graph: &WeightedGraph<T>) -> Self {
        let adj = if graph.is_directed() {
            graph.symmetrized().weighted_successors()
        } else {
            graph.weighted_successors()
        };
        let degree = adj.iter().map(|l| crate::scalar::sum(l.iter().map(|(_, w)| w.clone()))).collect();
        Level { loops: vec![T::zero(); adj.len()], adj, degree }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Modularity of the singleton partition of this level.
    fn modularity(&self, m: &T, gamma: &T) -> T {
        let two_m = m.clone() + m.clone();
        let mut q = T::zero();
        for (l, d) in self.loops.iter().zip(&self.degree) {
            let frac = d.clone() / two_m.clone();
            q = q + l.clone() / m.clone() - gamma.clone() * frac.clone() * frac;
        }
        q
    }

    /// Greedy local moves until a full sweep changes nothing. Returns the
    /// community of each node and whether anything moved.
    fn local_moves(&self, m: &T, gamma: &T, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
        let n = self.len();
        let two_m = m.clone() + m.clone();
        let eps = T::from_f64(1e-12).expect("representable") * m.clone();
        let mut comm: Vec<usize> = (0..n).collect();
        let mut tot = self.degree.clone();
        let mut w_to = vec![T::zero(); n];
        let mut touched: Vec<usize> = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        let mut any = false;
        loop {
            order.shuffle(rng);
            let mut moved = false;
            for &i in &order {
                let ci = comm[i];
                let ki = self.degree[i].clone();
                for (j, w) in &self.adj[i] {
                    let c = comm[*j];
                    if w_to[c].is_zero() {
                        touched.push(c);
                    }
                    w_to[c] = w_to[c].clone() + w.clone();
                }
                tot[ci] = tot[ci].clone() - ki.clone();
                let scale = gamma.clone() * ki.clone() / two_m.clone();
                let gain = |c: usize, w_to: &[T], tot: &[T]| w_to[c].clone() - scale.clone() * tot[c].clone();
                let mut best = ci;
                let mut best_gain = gain(ci, &w_to, &tot);
                for &c in &touched {
                    if c == ci {
                        continue;
                    }
                    let g = gain(c, &w_to, &tot);
                    if g > best_gain.clone() + eps.clone() {
                        best = c;
                        best_gain = g;
                    }
                }
                tot[best] = tot[best].clone() + ki;
                if best != ci {
                    comm[i] = best;
                    moved = true;
                }
                for &c in &touched {
                    w_to[c] = T::zero();
                }
                touched.clear();
            }
            if !moved {
                break;
            }
            any = true;
        }
        (comm, any)
    }

    fn aggregate(&self, comm: &[usize], count: usize) -> Self {
        let mut loops = vec![T::zero(); count];
        let mut degree = vec![T::zero(); count];
        let mut links: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); count];
        for i in 0..self.len() {
            let c = comm[i];
            loops[c] = loops[c].clone() + self.loops[i].clone();
            degree[c] = degree[c].clone() + self.degree[i].clone();
            for (j, w) in &self.adj[i] {
                let d = comm[*j];
                if c == d {
                    if i < *j {
                        loops[c] = loops[c].clone() + w.clone();
                    }
                } else {
                    let e = links[c].entry(d).or_insert_with(T::zero);
                    *e = e.clone() + w.clone();
                }
            }
        }
        let adj = links.into_iter().map(|l| l.into_iter().collect()).collect();
        Level { adj, loops, degree }
    }
}

/// Louvain community detection.
///
/// Node visiting order is reshuffled from a seeded generator on every
/// sweep, so the result is a pure function of graph and config. Directed
/// graphs are symmetrized first.
pub fn louvain<T: Scalar>(graph: &WeightedGraph<T>, config: &LouvainConfig) -> Partition<T> {
    let n = graph.node_count();
    let gamma = T::from_f64(config.resolution).expect("resolution representable");
    let nodes: Vec<String> = graph.node_ids().map(str::to_string).collect();
    let m = graph.total_weight();
    let mut membership: Vec<usize> = (0..n).collect();
    let mut levels = Vec::new();

    if !m.is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut level = Level::from_graph(graph);
        levels.push(level.modularity(&m, &gamma));
        loop {
            let (comm, moved) = level.local_moves(&m, &gamma, &mut rng);
            if !moved {
                break;
            }
            let dense = dense_labels(&comm);
            let count = dense.iter().max().map_or(0, |&c| c + 1);
            for c in membership.iter_mut() {
                *c = dense[*c];
            }
            level = level.aggregate(&dense, count);
            levels.push(level.modularity(&m, &gamma));
        }
    }

    let assignment = dense_labels(&membership);
    let q = modularity(graph, &assignment, gamma.clone()).expect("assignment covers graph");
    if levels.is_empty() {
        levels.push(q.clone());
    }
    Partition { nodes, assignment, modularity: q, resolution: gamma, seed: config.seed, levels }
}
