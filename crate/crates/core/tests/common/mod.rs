//! Brute-force reference implementations shared by the integration tests
//! and the acceptance suite.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use terrace::graphs::{Axis, BipartiteMatrix, ProjectionConfig, WeightedGraph};
use terrace::scalar::Scalar;
use terrace::Rational;

/// Adjacency lists on the unweighted view: successors for directed graphs,
/// neighbours for undirected ones.
pub fn adjacency<T: Scalar>(graph: &WeightedGraph<T>) -> Vec<Vec<usize>> {
    let mut adj = vec![BTreeSet::new(); graph.node_count()];
    for (u, v, _) in graph.edges() {
        adj[u].insert(v);
        if !graph.is_directed() {
            adj[v].insert(u);
        }
    }
    adj.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Hop distances and shortest-path counts from `s`.
fn bfs_counts(adj: &[Vec<usize>], s: usize) -> (Vec<Option<usize>>, Vec<BigInt>) {
    let mut dist = vec![None; adj.len()];
    let mut sigma = vec![BigInt::zero(); adj.len()];
    dist[s] = Some(0);
    sigma[s] = BigInt::one();
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
            if dist[v] == Some(du + 1) {
                let add = sigma[u].clone();
                sigma[v] += add;
            }
        }
    }
    (dist, sigma)
}

/// Betweenness by enumerating every (s, t) pair: v lies on a shortest s-t
/// path iff d(s,v) + d(v,t) = d(s,t), and carries sigma_sv * sigma_vt /
/// sigma_st of the pair. Undirected graphs count unordered pairs.
pub fn betweenness_oracle<T: Scalar>(graph: &WeightedGraph<T>) -> Vec<Rational> {
    let adj = adjacency(graph);
    let n = adj.len();
    let table: Vec<_> = (0..n).map(|s| bfs_counts(&adj, s)).collect();
    let mut score = vec![Rational::zero(); n];
    for s in 0..n {
        for t in 0..n {
            let Some(dst) = table[s].0[t] else { continue };
            if s == t {
                continue;
            }
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                if let (Some(dsv), Some(dvt)) = (table[s].0[v], table[v].0[t]) {
                    if dsv + dvt == dst {
                        let num = &table[s].1[v] * &table[v].1[t];
                        score[v] += Rational::new(num, table[s].1[t].clone());
                    }
                }
            }
        }
    }
    if !graph.is_directed() {
        let two = Rational::from_integer(BigInt::from(2));
        for x in &mut score {
            *x = &*x / &two;
        }
    }
    score
}

/// Ordered (s, t) pairs of a tree whose path passes through each node.
pub fn tree_pairs_through(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut count = vec![0; n];
    for s in 0..n {
        // parent pointers of the BFS tree rooted at s
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        for t in 0..n {
            if t == s || parent[t] == usize::MAX {
                continue;
            }
            let mut v = parent[t];
            while v != s {
                count[v] += 1;
                v = parent[v];
            }
        }
    }
    count
}

/// k-core by repeated scans: delete any node with fewer than `k` live
/// neighbours until none remains. Returns the surviving node ids.
pub fn k_core_oracle<T: Scalar>(graph: &WeightedGraph<T>, k: usize) -> BTreeSet<String> {
    let mut adj = vec![BTreeSet::new(); graph.node_count()];
    for (u, v, _) in graph.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut alive = vec![true; adj.len()];
    loop {
        let doomed = (0..adj.len()).find(|&v| alive[v] && adj[v].iter().filter(|&&u| alive[u]).count() < k);
        match doomed {
            Some(v) => alive[v] = false,
            None => break,
        }
    }
    (0..adj.len()).filter(|&v| alive[v]).map(|v| graph.node_id(v).to_string()).collect()
}

/// Dense vectors of the chosen axis, with the binary flag applied.
fn dense_vectors(matrix: &BipartiteMatrix, config: &ProjectionConfig) -> (Vec<String>, Vec<Vec<u64>>) {
    let (ids, n, dim) = match config.axis {
        Axis::User => (matrix.users(), matrix.n_users(), matrix.n_hashtags()),
        Axis::Hashtag => (matrix.hashtags(), matrix.n_hashtags(), matrix.n_users()),
    };
    let vectors = (0..n)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let c = match config.axis {
                        Axis::User => matrix.get(i, j),
                        Axis::Hashtag => matrix.get(j, i),
                    };
                    if config.binary { c.min(1) } else { c }
                })
                .collect()
        })
        .collect();
    (ids.to_vec(), vectors)
}

fn cosine(a: &[u64], b: &[u64]) -> f64 {
    let dot: u64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: u64 = a.iter().map(|x| x * x).sum();
    let nb: u64 = b.iter().map(|x| x * x).sum();
    (dot as f64 / (na as f64 * nb as f64).sqrt()).min(1.0)
}

/// Retained projection edges by all-pairs comparison. Permutation `r`
/// relocates each vector's non-zero values, in ascending position order,
/// to the positions drawn by one index sample on the documented stream.
pub fn projection_oracle(matrix: &BipartiteMatrix, config: &ProjectionConfig) -> BTreeMap<(String, String), f64> {
    let (ids, vectors) = dense_vectors(matrix, config);
    let n = vectors.len();
    let dim = vectors.first().map_or(0, Vec::len);
    let mut observed = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            let sim = cosine(&vectors[a], &vectors[b]);
            if sim > config.min_similarity {
                observed.insert((a, b), (sim, 0usize));
            }
        }
    }
    for r in 0..config.permutations {
        let mut rng = terrace::graphs::permutation_rng(config.rng_seed, r);
        let permuted: Vec<Vec<u64>> = vectors
            .iter()
            .map(|v| {
                let values: Vec<u64> = v.iter().copied().filter(|&c| c > 0).collect();
                let mut out = vec![0; dim];
                for (p, c) in sample(&mut rng, dim, values.len()).iter().zip(values) {
                    out[p] = c;
                }
                out
            })
            .collect();
        for (&(a, b), (sim, hits)) in observed.iter_mut() {
            if cosine(&permuted[a], &permuted[b]) >= *sim {
                *hits += 1;
            }
        }
    }
    observed
        .into_iter()
        .filter(|(_, (_, hits))| (*hits as f64 / config.permutations as f64) < config.alpha)
        .map(|((a, b), (sim, _))| ((ids[a].clone(), ids[b].clone()), sim))
        .collect()
}

/// Edge set of an undirected graph keyed by sorted id pairs.
pub fn edge_map(graph: &WeightedGraph<f64>) -> BTreeMap<(String, String), f64> {
    graph
        .edges()
        .map(|(u, v, &w)| {
            let (a, b) = (graph.node_id(u).to_string(), graph.node_id(v).to_string());
            (if a <= b { (a, b) } else { (b, a) }, w)
        })
        .collect()
}

/// Normalized mutual information (arithmetic-mean normalisation) from the
/// contingency table.
pub fn nmi_oracle(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len() as f64;
    let ka = a.iter().max().map_or(0, |m| m + 1);
    let kb = b.iter().max().map_or(0, |m| m + 1);
    let mut table = vec![vec![0.0f64; kb]; ka];
    for (&x, &y) in a.iter().zip(b) {
        table[x][y] += 1.0;
    }
    let rows: Vec<f64> = table.iter().map(|r| r.iter().sum()).collect();
    let cols: Vec<f64> = (0..kb).map(|j| table.iter().map(|r| r[j]).sum()).collect();
    let h = |xs: &[f64]| -> f64 { xs.iter().filter(|&&c| c > 0.0).map(|&c| -(c / n) * (c / n).ln()).sum() };
    let (ha, hb) = (h(&rows), h(&cols));
    if ha == 0.0 && hb == 0.0 {
        return 1.0;
    }
    let mut mi = 0.0;
    for i in 0..ka {
        for j in 0..kb {
            let c = table[i][j];
            if c > 0.0 {
                mi += (c / n) * (c * n / (rows[i] * cols[j])).ln();
            }
        }
    }
    2.0 * mi / (ha + hb)
}

/// Hop distances from `s`; `None` when unreachable.
pub fn hop_distances(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    bfs_counts(adj, s).0
}

/// Newman–Girvan modularity from the dense symmetrized adjacency matrix.
pub fn modularity_oracle(graph: &WeightedGraph<f64>, assignment: &[usize], resolution: f64) -> f64 {
    let n = graph.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for (u, v, &w) in graph.edges() {
        a[u][v] += w;
        a[v][u] += w;
    }
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if assignment[i] == assignment[j] {
                q += a[i][j] - resolution * k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Calls `f` with every set partition of `0..n` as a restricted growth
/// string.
pub fn for_each_partition(n: usize, f: &mut impl FnMut(&[usize])) {
    fn go(labels: &mut Vec<usize>, n: usize, max: usize, f: &mut impl FnMut(&[usize])) {
        if labels.len() == n {
            f(labels);
            return;
        }
        for c in 0..=max + usize::from(!labels.is_empty()) {
            labels.push(c);
            go(labels, n, max.max(c), f);
            labels.pop();
        }
    }
    go(&mut Vec::with_capacity(n), n, 0, f);
}

/// Runs the three detectors the way the pipeline wires them, with the
/// retweet-network partition standing in for user communities.
pub fn run_detectors(
    corpus: &terrace::synth::SynthCorpus,
    config: &terrace::influence::DetectorConfig,
) -> Vec<terrace::influence::InfluenceFinding> {
    use terrace::communities::{louvain, LouvainConfig};
    use terrace::graphs::{build_interaction_network, InteractionKind};
    use terrace::influence::*;
    use terrace::ingest::extract_political_subset;

    let political = extract_political_subset(&corpus.records, &corpus.vocabulary.lexicon()).records;
    let net = |kind| build_interaction_network::<f64>(&political, Some(kind)).graph;
    let retweet = net(InteractionKind::Retweet);
    let partition = louvain(&retweet, &LouvainConfig { seed: corpus.config.seed, ..Default::default() });
    let users = partition.to_map();
    let index = CorpusIndex::new(&corpus.records);
    let annotations = corpus.vocabulary.annotations();
    let affiliations = corpus.vocabulary.affiliations(corpus.config.football_affiliation);
    let profiles = corpus.profile_set();
    let (quote, reply, mention) = (net(InteractionKind::Quote), net(InteractionKind::Reply), net(InteractionKind::Mention));

    let mut findings = detect_hijacks(&index, &annotations, &affiliations, &profiles, Some(&users), config);
    findings.extend(detect_activist_clusters(&retweet, &partition, &political, config));
    let networks = MegaphoneNetworks { quote: &quote, reply: &reply, mention: &mention };
    findings.extend(detect_megaphones(networks, &index, &annotations, Some(&users), config));
    findings
}
