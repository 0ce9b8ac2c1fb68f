//! Cosine-similarity projections of the user x hashtag matrix, filtered by
//! a similarity floor and a permutation significance test.
//!
//! The null model permutes each entity's vector independently: its non-zero
//! entries are moved to positions drawn uniformly without replacement over
//! the other axis. Row sums and norms are preserved, only overlap changes.
//! Permutation `r` draws from a ChaCha8 generator seeded with `rng_seed` on
//! stream `r`; entities are processed in index order, each consuming one
//! `rand::seq::index::sample(rng, dim, nnz)` call whose i-th position
//! receives the entity's i-th non-zero value (in ascending column order).
//! The empirical p-value of a pair is the fraction of permutations whose
//! similarity reaches the observed one.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bipartite::BipartiteMatrix;
use super::graph::WeightedGraph;
use super::GraphError;
use crate::scalar::Real;

/// Default similarity floor for the user projection.
pub const USER_MIN_SIMILARITY: f64 = 0.45;
/// Default similarity floor for the hashtag projection.
pub const HASHTAG_MIN_SIMILARITY: f64 = 0.1;
pub const DEFAULT_ALPHA: f64 = 0.05;
pub const DEFAULT_PERMUTATIONS: usize = 1000;
pub const MIN_PERMUTATIONS: usize = 100;

/// Which side of the bipartite matrix becomes the node set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    User,
    Hashtag,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionConfig {
    pub axis: Axis,
    pub min_similarity: f64,
    pub alpha: f64,
    pub permutations: usize,
    pub rng_seed: u64,
    /// Use presence/absence instead of raw counts.
    #[serde(default)]
    pub binary: bool,
}

impl ProjectionConfig {
    pub fn users() -> Self {
        Self::for_axis(Axis::User)
    }

    pub fn hashtags() -> Self {
        Self::for_axis(Axis::Hashtag)
    }

    pub fn for_axis(axis: Axis) -> Self {
        ProjectionConfig {
            axis,
            min_similarity: match axis {
                Axis::User => USER_MIN_SIMILARITY,
                Axis::Hashtag => HASHTAG_MIN_SIMILARITY,
            },
            alpha: DEFAULT_ALPHA,
            permutations: DEFAULT_PERMUTATIONS,
            rng_seed: 0,
            binary: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(GraphError::Config(format!("alpha must be in (0,1), got {}", self.alpha)));
        }
        if self.permutations < MIN_PERMUTATIONS {
            return Err(GraphError::Config(format!(
                "at least {MIN_PERMUTATIONS} permutations required, got {}",
                self.permutations
            )));
        }
        if !(0.0..=1.0).contains(&self.min_similarity) {
            return Err(GraphError::Config(format!(
                "min_similarity must be in [0,1], got {}",
                self.min_similarity
            )));
        }
        Ok(())
    }
}

/// Cosine similarity of two dense vectors.
pub fn cosine_similarity<T: Real>(a: &[T], b: &[T]) -> Result<T, GraphError> {
    if a.len() != b.len() {
        return Err(GraphError::Format(format!("length mismatch {} vs {}", a.len(), b.len())));
    }
    let dot = a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y);
    let na = a.iter().fold(T::zero(), |acc, &x| acc + x * x);
    let nb = b.iter().fold(T::zero(), |acc, &x| acc + x * x);
    if na == T::zero() || nb == T::zero() {
        return Err(GraphError::ZeroVector);
    }
    Ok((dot / (na * nb).sqrt()).min(T::one()))
}

/// Outcome of the significance test for one candidate pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairTest<T> {
    pub a: usize,
    pub b: usize,
    pub similarity: T,
    /// Permutations reaching the observed similarity.
    pub exceedances: usize,
    pub p_value: f64,
    pub retained: bool,
}

/// A similarity network plus the per-pair test record.
#[derive(Debug, Clone)]
pub struct Projection<T> {
    /// One node per matrix entity on the projected axis, edge weight =
    /// cosine similarity, only retained pairs.
    pub graph: WeightedGraph<T>,
    /// Every candidate pair (shared support and similarity above the floor).
    pub tests: Vec<PairTest<T>>,
}

struct Entity {
    /// ascending positions with their values
    entries: Vec<(usize, u64)>,
    norm_sq: u64,
}

fn similarity<T: Real>(dot: u64, norm_a: u64, norm_b: u64) -> T {
    let denom = (T::from_count(norm_a) * T::from_count(norm_b)).sqrt();
    (T::from_count(dot) / denom).min(T::one())
}

/// Projects the matrix onto one axis.
pub fn project_similarity<T: Real>(
    matrix: &BipartiteMatrix,
    config: &ProjectionConfig,
) -> Result<Projection<T>, GraphError> {
    config.validate()?;
    let (ids, vectors, dim) = match config.axis {
        Axis::User => (matrix.users(), (0..matrix.n_users()).map(|u| matrix.row(u).to_vec()).collect::<Vec<_>>(), matrix.n_hashtags()),
        Axis::Hashtag => (matrix.hashtags(), matrix.columns(), matrix.n_users()),
    };

    let mut graph = WeightedGraph::new_undirected();
    for id in ids {
        graph.add_node(id);
    }
    if vectors.is_empty() {
        return Ok(Projection { graph, tests: Vec::new() });
    }

    let entities: Vec<Entity> = vectors
        .into_iter()
        .map(|v| {
            let entries: Vec<(usize, u64)> = v
                .into_iter()
                .map(|(p, c)| (p, if config.binary { 1 } else { c }))
                .collect();
            let norm_sq = entries.iter().map(|&(_, c)| c * c).sum();
            Entity { entries, norm_sq }
        })
        .collect();

    // observed dot products through an inverted index over positions
    let mut postings: Vec<Vec<(usize, u64)>> = vec![Vec::new(); dim];
    for (e, ent) in entities.iter().enumerate() {
        for &(p, c) in &ent.entries {
            postings[p].push((e, c));
        }
    }
    let min_sim = T::from_f64(config.min_similarity).expect("finite threshold");
    let mut candidates: Vec<(usize, usize, u64)> = Vec::new();
    let mut acc = vec![0u64; entities.len()];
    let mut touched = Vec::new();
    for (a, ent) in entities.iter().enumerate() {
        for &(p, ca) in &ent.entries {
            for &(b, cb) in &postings[p] {
                if b > a {
                    if acc[b] == 0 {
                        touched.push(b);
                    }
                    acc[b] += ca * cb;
                }
            }
        }
        touched.sort_unstable();
        for &b in &touched {
            let dot = acc[b];
            acc[b] = 0;
            let sim: T = similarity(dot, ent.norm_sq, entities[b].norm_sq);
            if sim > min_sim {
                candidates.push((a, b, dot));
            }
        }
        touched.clear();
    }

    let exceedances = permutation_exceedances::<T>(&entities, dim, &candidates, config);

    let threshold = config.alpha;
    let mut tests = Vec::with_capacity(candidates.len());
    for (&(a, b, dot), &hits) in candidates.iter().zip(&exceedances) {
        let sim: T = similarity(dot, entities[a].norm_sq, entities[b].norm_sq);
        let p_value = hits as f64 / config.permutations as f64;
        let retained = p_value < threshold;
        if retained {
            graph.add_weight(a, b, sim).expect("positive similarity");
        }
        tests.push(PairTest {
            a,
            b,
            similarity: sim,
            exceedances: hits,
            p_value,
            retained,
        });
    }
    Ok(Projection { graph, tests })
}

/// Rng for permutation `r` of the null model.
pub fn permutation_rng(seed: u64, r: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(r as u64);
    rng
}

fn permutation_exceedances<T: Real>(
    entities: &[Entity],
    dim: usize,
    candidates: &[(usize, usize, u64)],
    config: &ProjectionConfig,
) -> Vec<usize> {
    if candidates.is_empty() {
        return Vec::new();
    }
    // observed similarity per candidate, computed exactly as in the test loop
    let observed: Vec<T> = candidates
        .iter()
        .map(|&(a, b, dot)| similarity(dot, entities[a].norm_sq, entities[b].norm_sq))
        .collect();

    const CHUNK: usize = 32;
    let chunks: Vec<Vec<usize>> = (0..config.permutations)
        .collect::<Vec<_>>()
        .par_chunks(CHUNK)
        .map(|rs| {
            let mut hits = vec![0usize; candidates.len()];
            let mut permuted: Vec<Vec<(usize, u64)>> = vec![Vec::new(); entities.len()];
            let mut dense = vec![0u64; dim];
            for &r in rs {
                let mut rng = permutation_rng(config.rng_seed, r);
                for (e, ent) in entities.iter().enumerate() {
                    let positions = rand::seq::index::sample(&mut rng, dim, ent.entries.len());
                    let out = &mut permuted[e];
                    out.clear();
                    out.extend(positions.iter().zip(&ent.entries).map(|(p, &(_, c))| (p, c)));
                }
                let mut current = usize::MAX;
                for (k, &(a, b, _)) in candidates.iter().enumerate() {
                    if a != current {
                        if current != usize::MAX {
                            for &(p, _) in &permuted[current] {
                                dense[p] = 0;
                            }
                        }
                        for &(p, c) in &permuted[a] {
                            dense[p] = c;
                        }
                        current = a;
                    }
                    let dot: u64 = permuted[b].iter().map(|&(p, c)| dense[p] * c).sum();
                    let sim: T = similarity(dot, entities[a].norm_sq, entities[b].norm_sq);
                    if sim >= observed[k] {
                        hits[k] += 1;
                    }
                }
                if current != usize::MAX {
                    for &(p, _) in &permuted[current] {
                        dense[p] = 0;
                    }
                }
            }
            hits
        })
        .collect();

    let mut total = vec![0usize; candidates.len()];
    for hits in chunks {
        for (t, h) in total.iter_mut().zip(hits) {
            *t += h;
        }
    }
    total
}
