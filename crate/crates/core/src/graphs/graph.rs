use std::collections::BTreeMap;

use indexmap::IndexSet;

use super::GraphError;
use crate::scalar::Scalar;

/// Node/edge structure with strictly positive weights and no self-loops.
///
/// Nodes are string ids kept in insertion order; algorithms address them by
/// their dense index. Undirected edges are stored once, keyed
/// `(min_index, max_index)`. Adding weight to an existing edge accumulates.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<T> {
    directed: bool,
    nodes: IndexSet<String>,
    labels: Vec<Option<String>>,
    edges: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> WeightedGraph<T> {
    pub fn new(directed: bool) -> Self {
        WeightedGraph {
            directed,
            nodes: IndexSet::new(),
            labels: Vec::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn new_directed() -> Self {
        Self::new(true)
    }

    pub fn new_undirected() -> Self {
        Self::new(false)
    }

    /// Builds a graph over `n` nodes named `"0".."n-1"` from an edge list.
    pub fn from_edges(directed: bool, n: usize, edges: &[(usize, usize, T)]) -> Result<Self, GraphError> {
        let mut g = Self::new(directed);
        for i in 0..n {
            g.add_node(&i.to_string());
        }
        for (u, v, w) in edges {
            g.add_weight(*u, *v, w.clone())?;
        }
        Ok(g)
    }

    /// Unit-weight graph from index pairs; repeated pairs accumulate.
    pub fn from_unit_edges(directed: bool, n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, T::one())).collect();
        Self::from_edges(directed, n, &weighted)
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Returns the index of `id`, inserting it if new.
    pub fn add_node(&mut self, id: &str) -> usize {
        if let Some(i) = self.nodes.get_index_of(id) {
            return i;
        }
        self.nodes.insert(id.to_string());
        self.labels.push(None);
        self.nodes.len() - 1
    }

    pub fn set_label(&mut self, node: usize, label: impl Into<String>) {
        self.labels[node] = Some(label.into());
    }

    pub fn label(&self, node: usize) -> Option<&str> {
        self.labels[node].as_deref()
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.get_index_of(id)
    }

    pub fn node_id(&self, node: usize) -> &str {
        &self.nodes[node]
    }

    pub fn node_ids(&self) -> impl ExactSizeIterator<Item = &str> {
        self.nodes.iter().map(String::as_str)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn key(&self, src: usize, dst: usize) -> (usize, usize) {
        if self.directed || src <= dst {
            (src, dst)
        } else {
            (dst, src)
        }
    }

    /// Adds `weight` to the edge `src -> dst` (or `{src, dst}`).
    pub fn add_weight(&mut self, src: usize, dst: usize, weight: T) -> Result<(), GraphError> {
        let n = self.node_count();
        if src >= n || dst >= n {
            return Err(GraphError::UnknownNode(format!("{}", src.max(dst))));
        }
        if src == dst {
            return Err(GraphError::SelfLoop(self.node_id(src).to_string()));
        }
        if !weight.is_positive() {
            return Err(GraphError::NonPositiveWeight(weight.to_f64_lossy()));
        }
        let key = self.key(src, dst);
        match self.edges.get_mut(&key) {
            Some(w) => *w = w.clone() + weight,
            None => {
                self.edges.insert(key, weight);
            }
        }
        Ok(())
    }

    /// Adds weight between two ids, creating nodes as needed.
    pub fn add_weight_by_id(&mut self, src: &str, dst: &str, weight: T) -> Result<(), GraphError> {
        let s = self.add_node(src);
        let d = self.add_node(dst);
        self.add_weight(s, d, weight)
    }

    pub fn edge_weight(&self, src: usize, dst: usize) -> Option<&T> {
        self.edges.get(&self.key(src, dst))
    }

    /// Edges in `(src, dst)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.edges.iter().map(|(&(s, d), w)| (s, d, w))
    }

    pub fn total_weight(&self) -> T {
        crate::scalar::sum(self.edges.values().cloned())
    }

    /// Unweighted adjacency ignoring direction, sorted and deduplicated.
    pub fn undirected_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(s, d) in self.edges.keys() {
            adj[s].push(d);
            adj[d].push(s);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Unweighted successor lists: out-neighbours when directed, all
    /// neighbours otherwise.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        if !self.directed {
            return self.undirected_neighbors();
        }
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(s, d) in self.edges.keys() {
            adj[s].push(d);
        }
        adj
    }

    /// Weighted successor lists; undirected edges appear in both directions.
    pub fn weighted_successors(&self) -> Vec<Vec<(usize, T)>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for (&(s, d), w) in &self.edges {
            adj[s].push((d, w.clone()));
            if !self.directed {
                adj[d].push((s, w.clone()));
            }
        }
        adj
    }

    /// Number of distinct in-neighbours (all neighbours when undirected).
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count()];
        for &(s, d) in self.edges.keys() {
            deg[d] += 1;
            if !self.directed {
                deg[s] += 1;
            }
        }
        deg
    }

    /// Number of distinct out-neighbours (all neighbours when undirected).
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count()];
        for &(s, d) in self.edges.keys() {
            deg[s] += 1;
            if !self.directed {
                deg[d] += 1;
            }
        }
        deg
    }

    /// Undirected copy; reciprocal directed weights are summed.
    pub fn symmetrized(&self) -> Self {
        let mut g = WeightedGraph {
            directed: false,
            nodes: self.nodes.clone(),
            labels: self.labels.clone(),
            edges: BTreeMap::new(),
        };
        for (&(s, d), w) in &self.edges {
            g.add_weight(s, d, w.clone()).expect("valid edge");
        }
        g
    }

    /// Subgraph on the nodes for which `keep` is true, in original order.
    pub fn induced_subgraph(&self, keep: impl Fn(usize) -> bool) -> Self {
        self.filtered(keep, |_, _, _| true)
    }

    /// Copy retaining nodes passing `keep_node` and edges (between kept
    /// nodes) passing `keep_edge`.
    pub fn filtered(
        &self,
        keep_node: impl Fn(usize) -> bool,
        keep_edge: impl Fn(usize, usize, &T) -> bool,
    ) -> Self {
        let mut g = Self::new(self.directed);
        let mut remap = vec![usize::MAX; self.node_count()];
        for (i, id) in self.nodes.iter().enumerate() {
            if keep_node(i) {
                remap[i] = g.add_node(id);
                if let Some(label) = &self.labels[i] {
                    g.set_label(remap[i], label.clone());
                }
            }
        }
        for (&(s, d), w) in &self.edges {
            if remap[s] != usize::MAX && remap[d] != usize::MAX && keep_edge(s, d, w) {
                g.edges.insert(g.key(remap[s], remap[d]), w.clone());
            }
        }
        g
    }

    /// Converts weights into another scalar type.
    pub fn map_weights<U: Scalar>(&self, f: impl Fn(&T) -> U) -> WeightedGraph<U> {
        WeightedGraph {
            directed: self.directed,
            nodes: self.nodes.clone(),
            labels: self.labels.clone(),
            edges: self.edges.iter().map(|(&k, w)| (k, f(w))).collect(),
        }
    }
}
