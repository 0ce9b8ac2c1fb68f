use rayon::prelude::*;

/// Hop distances from `source` over `adj`; `u32::MAX` marks unreachable.
pub fn bfs_distances(adj: &[Vec<usize>], source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest-path summary over ordered pairs of distinct reachable nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PathStats {
    pub pairs: u64,
    pub total_length: u64,
    pub diameter: u32,
}

impl PathStats {
    pub fn average(&self) -> Option<f64> {
        (self.pairs > 0).then(|| self.total_length as f64 / self.pairs as f64)
    }

    fn merge(mut self, other: PathStats) -> PathStats {
        self.pairs += other.pairs;
        self.total_length += other.total_length;
        self.diameter = self.diameter.max(other.diameter);
        self
    }
}

const CHUNK: usize = 64;

/// All-pairs BFS from each of `sources`.
pub(crate) fn path_stats(adj: &[Vec<usize>], sources: &[usize]) -> PathStats {
    let partials: Vec<PathStats> = sources
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = PathStats::default();
            for &s in chunk {
                for (v, &d) in bfs_distances(adj, s).iter().enumerate() {
                    if v != s && d != u32::MAX {
                        acc.pairs += 1;
                        acc.total_length += u64::from(d);
                        acc.diameter = acc.diameter.max(d);
                    }
                }
            }
            acc
        })
        .collect();
    partials.into_iter().fold(PathStats::default(), PathStats::merge)
}
