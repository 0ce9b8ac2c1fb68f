//! Detection and characterisation of political content inside topical
//! (fan-community) social media corpora.
//!
//! The crate is organised as a pipeline:
//!
//! * [`ingest`] reads newline-delimited records, applies a political
//!   lexicon and extracts the political subset with its reply/quote context.
//! * [`graphs`] builds hashtag co-occurrence, user interaction and
//!   significance-filtered similarity networks.
//! * [`metrics`] computes global properties, centralities and core filters.
//! * [`communities`] runs Louvain, groups hashtag communities into themes
//!   with Ward linkage and profiles user-community engagement.
//! * [`influence`] implements the hijack, embedded-activism and megaphone
//!   detectors.
//! * [`synth`] generates labelled corpora with planted campaigns.
//!
//! Numeric code is generic over [`Scalar`]/[`Real`]; the aliases below fix
//! the scalar for everyday use.

pub mod communities;
pub mod graphs;
pub mod influence;
pub mod ingest;
pub mod metrics;
pub mod scalar;
pub mod synth;

pub use scalar::{Real, Scalar};

/// Exact rational scalar used by oracle comparisons.
pub type Rational = num_rational::BigRational;

/// Weighted graph over `f64` weights.
pub type Graph = graphs::WeightedGraph<f64>;
/// Single-precision graph, for memory-bound workloads.
pub type Graph32 = graphs::WeightedGraph<f32>;
/// Graph with exact rational weights.
pub type ExactGraph = graphs::WeightedGraph<Rational>;
/// Community assignment with an `f64` modularity score.
pub type Partition = communities::Partition<f64>;
