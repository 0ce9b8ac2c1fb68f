//! Pipeline stages and the runner that orders them.
//!
//! Stages talk only through files in the output directory, so any stage can
//! be rerun on its own once its upstream artifacts exist.

mod communities;
mod extract;
mod influence;
mod metrics;
mod networks;
mod report;
mod synth;
mod themes;

use std::collections::BTreeMap;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use terrace::graphs::{io as graph_io, Annotations};
use terrace::influence::AffiliationSet;
use terrace::ingest::{read_corpus, Lexicon, ProfileSet, TweetRecord};
use terrace::Graph;

use crate::config::{PipelineConfig, Seeds};
use crate::error::CliError;
use crate::store::{sha256_file, InputRecord, Manifest, OutDir, StageRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Synth,
    Extract,
    Networks,
    Metrics,
    Communities,
    Themes,
    Influence,
    Report,
}

impl Stage {
    pub const ALL: [Stage; 8] = [
        Stage::Synth,
        Stage::Extract,
        Stage::Networks,
        Stage::Metrics,
        Stage::Communities,
        Stage::Themes,
        Stage::Influence,
        Stage::Report,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Synth => "synth",
            Stage::Extract => "extract",
            Stage::Networks => "networks",
            Stage::Metrics => "metrics",
            Stage::Communities => "communities",
            Stage::Themes => "themes",
            Stage::Influence => "influence",
            Stage::Report => "report",
        }
    }

    /// Direct upstream stages. `synth` only feeds runs without a corpus.
    pub fn requires(self, synthetic: bool) -> Vec<Stage> {
        match self {
            Stage::Synth => vec![],
            Stage::Extract => if synthetic { vec![Stage::Synth] } else { vec![] },
            Stage::Networks => vec![Stage::Extract],
            Stage::Metrics | Stage::Communities => vec![Stage::Networks],
            Stage::Themes => vec![Stage::Communities],
            Stage::Influence => vec![Stage::Communities],
            Stage::Report => vec![Stage::Metrics, Stage::Themes, Stage::Influence],
        }
    }

    /// The stage plus everything upstream of it, in run order.
    pub fn closure(self, synthetic: bool) -> Vec<Stage> {
        let mut needed = vec![self];
        let mut i = 0;
        while i < needed.len() {
            for s in needed[i].requires(synthetic) {
                if !needed.contains(&s) {
                    needed.push(s);
                }
            }
            i += 1;
        }
        needed.sort();
        needed
    }
}

/// Shared state of one invocation.
pub struct Context {
    pub config: PipelineConfig,
    pub seeds: Seeds,
    pub out: OutDir,
    pub manifest: Manifest,
}

/// Artifacts written by the running stage.
#[derive(Default)]
pub struct Written(BTreeMap<String, String>);

impl Context {
    fn write_with<F>(&self, written: &mut Written, rel: &str, fill: F) -> Result<(), CliError>
    where
        F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
    {
        let digest = self.out.write_with(rel, fill)?;
        written.0.insert(rel.to_string(), digest);
        Ok(())
    }

    fn write_json<T: Serialize + ?Sized>(&self, written: &mut Written, rel: &str, value: &T) -> Result<(), CliError> {
        let digest = self.out.write_json(rel, value)?;
        written.0.insert(rel.to_string(), digest);
        Ok(())
    }

    fn write_graph(
        &self,
        written: &mut Written,
        stem: &str,
        graph: &Graph,
        annotations: Option<&Annotations>,
    ) -> Result<(), CliError> {
        let nodes = format!("{stem}.nodes.csv");
        self.write_with(written, &nodes, |w| {
            graph_io::write_node_table(graph, annotations, None, w).map_err(|e| CliError::runtime(&nodes, e))
        })?;
        let edges = format!("{stem}.edges.csv");
        self.write_with(written, &edges, |w| graph_io::write_edge_list(graph, w).map_err(|e| CliError::runtime(&edges, e)))
    }

    fn read_graph(&self, stem: &str, directed: bool) -> Result<Graph, CliError> {
        let nodes = self.out.open_file(&format!("{stem}.nodes.csv"))?;
        let edges = self.out.open_file(&format!("{stem}.edges.csv"))?;
        graph_io::read_graph(directed, BufReader::new(nodes), BufReader::new(edges)).map_err(|e| CliError::runtime(stem, e))
    }

    /// Path of an input: the configured file, or the synth stage's copy.
    fn input_path(&self, configured: &Option<PathBuf>, synth_rel: &str) -> Option<PathBuf> {
        match configured {
            Some(p) => Some(p.clone()),
            None if self.config.synthetic() => Some(self.out.path(synth_rel)),
            None => None,
        }
    }

    /// The full input corpus and the number of malformed lines skipped.
    fn corpus_with_skips(&self) -> Result<(Vec<TweetRecord>, usize), CliError> {
        let path = self.input_path(&self.config.paths.corpus, synth::CORPUS).expect("corpus always resolves");
        let parsed = read_corpus(&path).map_err(|e| CliError::runtime(path.display(), e))?;
        let skipped = parsed.skipped();
        if skipped > 0 {
            tracing::warn!(skipped, "malformed corpus lines skipped");
        }
        Ok((parsed.records, skipped))
    }

    fn corpus(&self) -> Result<Vec<TweetRecord>, CliError> {
        Ok(self.corpus_with_skips()?.0)
    }

    fn political(&self) -> Result<Vec<TweetRecord>, CliError> {
        let path = self.out.path(extract::POLITICAL);
        Ok(read_corpus(&path).map_err(|e| CliError::runtime(path.display(), e))?.records)
    }

    fn lexicon(&self) -> Result<Lexicon, CliError> {
        let path = self.input_path(&self.config.paths.lexicon, synth::LEXICON).expect("validated");
        Lexicon::load(&path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    fn profiles(&self) -> Result<ProfileSet, CliError> {
        match self.input_path(&self.config.paths.profiles, synth::PROFILES) {
            Some(path) => ProfileSet::load(&path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display()))),
            None => {
                tracing::warn!("no profile file; actor types and affiliations are unknown");
                Ok(ProfileSet::default())
            }
        }
    }

    fn annotations(&self) -> Result<Annotations, CliError> {
        match self.input_path(&self.config.paths.annotations, synth::ANNOTATIONS) {
            Some(path) => Annotations::load(&path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display()))),
            None => {
                tracing::warn!("no hashtag annotation file; every hashtag counts as other");
                Ok(Annotations::default())
            }
        }
    }

    fn affiliations(&self) -> Result<AffiliationSet, CliError> {
        match self.input_path(&self.config.paths.affiliations, synth::AFFILIATIONS) {
            Some(path) => AffiliationSet::load(&path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display()))),
            None => {
                tracing::warn!("no affiliation file; hijack audiences cannot be profiled");
                Ok(AffiliationSet::default())
            }
        }
    }

    fn record_inputs(&mut self) -> Result<(), CliError> {
        let paths = &self.config.paths;
        for (name, path) in [
            ("corpus", &paths.corpus),
            ("lexicon", &paths.lexicon),
            ("profiles", &paths.profiles),
            ("annotations", &paths.annotations),
            ("affiliations", &paths.affiliations),
        ] {
            if let Some(p) = path {
                let record = InputRecord { path: p.clone(), sha256: sha256_file(p)? };
                self.manifest.inputs.insert(name.to_string(), record);
            }
        }
        Ok(())
    }

    /// True if `stage` finished under the current config and its artifacts
    /// are still on disk unchanged.
    fn is_complete(&self, stage: Stage) -> bool {
        self.manifest.stages.get(stage.as_str()).is_some_and(|rec| {
            rec.artifacts.iter().all(|(rel, digest)| sha256_file(&self.out.path(rel)).is_ok_and(|d| d == *digest))
        })
    }

    fn missing_prerequisite(&self, stage: Stage) -> Option<CliError> {
        let synthetic = self.config.synthetic();
        stage.requires(synthetic).into_iter().find(|s| !self.is_complete(*s)).map(|needs| CliError::Prerequisite {
            stage: stage.as_str(),
            needs: needs.as_str(),
            artifact: format!("the `{}` artifacts in {}", needs.as_str(), self.out.root().display()),
        })
    }

    fn run_one(&mut self, stage: Stage) -> Result<(), CliError> {
        if let Some(err) = self.missing_prerequisite(stage) {
            return Err(err);
        }
        tracing::info!(stage = stage.as_str(), "running");
        let mut written = Written::default();
        match stage {
            Stage::Synth => synth::run(self, &mut written)?,
            Stage::Extract => extract::run(self, &mut written)?,
            Stage::Networks => networks::run(self, &mut written)?,
            Stage::Metrics => metrics::run(self, &mut written)?,
            Stage::Communities => communities::run(self, &mut written)?,
            Stage::Themes => themes::run(self, &mut written)?,
            Stage::Influence => influence::run(self, &mut written)?,
            Stage::Report => report::run(self, &mut written)?,
        }
        // downstream results are stale once an upstream stage reruns
        let synthetic = self.config.synthetic();
        self.manifest.stages.retain(|name, _| {
            Stage::ALL.iter().find(|s| s.as_str() == name).map_or(false, |s| !s.closure(synthetic).contains(&stage))
        });
        self.manifest.stages.insert(stage.as_str().to_string(), StageRecord { artifacts: written.0 });
        self.out.save_manifest(&self.manifest)
    }
}

/// How much of the pipeline to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    All,
    Stage { stage: Stage, only: bool },
}

/// Runs `target` with `config` into `out_dir`.
pub fn run(target: Target, mut config: PipelineConfig, out_dir: &Path) -> Result<(), CliError> {
    let seeds = config.resolve_seeds();
    config.validate()?;
    let out = OutDir::open(out_dir)?;
    let fresh = Manifest::new(&config, seeds);
    let manifest = match out.load_manifest() {
        Some(m) if m.config_sha256 == fresh.config_sha256 => m,
        Some(_) => {
            tracing::info!("config changed since the last run; earlier stage results are ignored");
            fresh
        }
        None => fresh,
    };
    let mut ctx = Context { config, seeds, out, manifest };
    ctx.record_inputs()?;
    let synthetic = ctx.config.synthetic();
    match target {
        Target::All => {
            for stage in Stage::ALL.into_iter().filter(|s| synthetic || *s != Stage::Synth) {
                ctx.run_one(stage)?;
            }
        }
        Target::Stage { stage, only: true } => ctx.run_one(stage)?,
        Target::Stage { stage, only: false } => {
            // reruns invalidate downstream records, so completeness is
            // checked just before each step
            for s in stage.closure(synthetic) {
                if s == stage || !ctx.is_complete(s) {
                    ctx.run_one(s)?;
                }
            }
        }
    }
    Ok(())
}
