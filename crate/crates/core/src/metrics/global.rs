use serde::{Deserialize, Serialize};

use super::paths::path_stats;
use crate::graphs::WeightedGraph;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalMetrics {
    pub directed: bool,
    pub node_count: usize,
    pub edge_count: usize,
    pub density: f64,
    /// `2m/n` when undirected, `m/n` (mean out-degree) when directed.
    pub avg_degree: f64,
    pub avg_clustering: f64,
    pub component_count: usize,
    pub giant_component_size: usize,
    pub giant_component_fraction: f64,
    /// Mean hop distance over pairs in the giant component.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub avg_path_length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diameter: Option<u32>,
}

/// Connected components of the undirected view (weak components for
/// directed graphs), largest first; equal sizes ordered by smallest member.
pub fn connected_components<T: Scalar>(graph: &WeightedGraph<T>) -> Vec<Vec<usize>> {
    components_of(&graph.undirected_neighbors())
}

fn components_of(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut comps = Vec::new();
    for start in 0..adj.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    comps
}

fn local_clustering(adj: &[Vec<usize>], v: usize, mark: &mut [bool]) -> f64 {
    let nbrs = &adj[v];
    let d = nbrs.len();
    if d < 2 {
        return 0.0;
    }
    for &u in nbrs {
        mark[u] = true;
    }
    let mut links = 0u64;
    for &u in nbrs {
        links += adj[u].iter().filter(|&&w| mark[w]).count() as u64;
    }
    for &u in nbrs {
        mark[u] = false;
    }
    // Every triangle edge among neighbours was seen from both ends.
    (links / 2) as f64 / (d * (d - 1) / 2) as f64
}

pub fn global_properties<T: Scalar>(graph: &WeightedGraph<T>) -> GlobalMetrics {
    let n = graph.node_count();
    let m = graph.edge_count();
    let directed = graph.is_directed();
    if n == 0 {
        return GlobalMetrics {
            directed,
            node_count: 0,
            edge_count: 0,
            density: 0.0,
            avg_degree: 0.0,
            avg_clustering: 0.0,
            component_count: 0,
            giant_component_size: 0,
            giant_component_fraction: 0.0,
            avg_path_length: None,
            diameter: None,
        };
    }
    let (nf, mf) = (n as f64, m as f64);
    let density = if n < 2 {
        0.0
    } else if directed {
        mf / (nf * (nf - 1.0))
    } else {
        2.0 * mf / (nf * (nf - 1.0))
    };
    let avg_degree = if directed { mf / nf } else { 2.0 * mf / nf };

    let adj = graph.undirected_neighbors();
    let mut mark = vec![false; n];
    let avg_clustering = (0..n).map(|v| local_clustering(&adj, v, &mut mark)).sum::<f64>() / nf;

    let comps = components_of(&adj);
    let giant = &comps[0];
    let stats = path_stats(&adj, giant);
    GlobalMetrics {
        directed,
        node_count: n,
        edge_count: m,
        density,
        avg_degree,
        avg_clustering,
        component_count: comps.len(),
        giant_component_size: giant.len(),
        giant_component_fraction: giant.len() as f64 / nf,
        avg_path_length: stats.average(),
        diameter: (stats.pairs > 0).then_some(stats.diameter),
    }
}
