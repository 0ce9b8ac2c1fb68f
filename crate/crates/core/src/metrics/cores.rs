use crate::graphs::WeightedGraph;
use crate::scalar::Scalar;

/// Keeps edges with weight strictly above `min_weight`, then drops nodes
/// left without edges.
pub fn filter_by_edge_weight<T: Scalar>(graph: &WeightedGraph<T>, min_weight: &T) -> WeightedGraph<T> {
    let heavy = graph.filtered(|_| true, |_, _, w| w > min_weight);
    let degree = heavy.in_degrees();
    heavy.induced_subgraph(|v| degree[v] > 0)
}

/// Core number of every node on the undirected simple view
/// (Batagelj–Zaversnik bucket peeling).
pub fn core_numbers<T: Scalar>(graph: &WeightedGraph<T>) -> Vec<usize> {
    let adj = graph.undirected_neighbors();
    let n = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i];
        for &u in &adj[v] {
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg
}

/// Maximal subgraph in which every node has at least `k` distinct
/// neighbours.
pub fn k_core<T: Scalar>(graph: &WeightedGraph<T>, k: usize) -> WeightedGraph<T> {
    let core = core_numbers(graph);
    graph.induced_subgraph(|v| core[v] >= k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_survives_its_core() {
        let g = WeightedGraph::<f64>::from_unit_edges(false, 4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        assert_eq!(k_core(&g, 3).node_count(), 4);
        assert_eq!(k_core(&g, 4).node_count(), 0);
    }

    #[test]
    fn star_peels_away() {
        let g = WeightedGraph::<f64>::from_unit_edges(false, 6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert!(k_core(&g, 2).is_empty());
        assert_eq!(k_core(&g, 1).node_count(), 6);
    }

    #[test]
    fn core_numbers_of_triangle_with_tail() {
        let g = WeightedGraph::<f64>::from_unit_edges(false, 5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(core_numbers(&g), vec![2, 2, 2, 1, 1]);
    }

    #[test]
    fn weight_filter_is_strict() {
        let g = WeightedGraph::<f64>::from_edges(false, 4, &[(0, 1, 25.0), (1, 2, 26.0), (2, 3, 3.0)]).unwrap();
        let f = filter_by_edge_weight(&g, &25.0);
        assert_eq!(f.node_ids().collect::<Vec<_>>(), vec!["1", "2"]);
        assert_eq!(f.edge_count(), 1);
    }

    #[test]
    fn zero_threshold_only_drops_isolates() {
        let mut g = WeightedGraph::<f64>::from_unit_edges(false, 3, &[(0, 1)]).unwrap();
        g.add_node("lonely");
        let f = filter_by_edge_weight(&g, &0.0);
        assert_eq!(f.node_count(), 2);
        assert_eq!(f.edge_count(), 1);
    }
}
