//! Staged pipeline driver for the `terrace` engine.
//!
//! Each stage reads its inputs from files and writes its artifacts to a
//! shared output directory:
//!
//! | stage         | writes                                                     |
//! |---------------|------------------------------------------------------------|
//! | `synth`       | `synth/` corpus, profiles, lexicon, annotations, truth     |
//! | `extract`     | `extract/political.jsonl`, summaries, extraction stats     |
//! | `networks`    | `networks/<name>.{nodes,edges}.csv`, user x hashtag matrix |
//! | `metrics`     | `metrics/` global properties, cores, centrality rankings   |
//! | `communities` | `communities/<name>.partition.csv`, summary                |
//! | `themes`      | `themes/` compositions, Ward themes, engagement profiles   |
//! | `influence`   | `influence/findings.jsonl`, summary                        |
//! | `report`      | `report.json`                                              |
//!
//! `manifest.json` records the resolved config, seeds, input digests and a
//! digest for every artifact.

pub mod config;
pub mod error;
pub mod stages;
pub mod store;

pub use config::PipelineConfig;
pub use error::CliError;
pub use stages::{run, Stage, Target};
