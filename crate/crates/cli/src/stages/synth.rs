use terrace::ingest::write_records;
use terrace::synth::generate_corpus;

use super::{Context, Written};
use crate::error::CliError;

pub const CORPUS: &str = "synth/corpus.jsonl";
pub const PROFILES: &str = "synth/profiles.jsonl";
pub const LEXICON: &str = "synth/lexicon.json";
pub const ANNOTATIONS: &str = "synth/annotations.csv";
pub const AFFILIATIONS: &str = "synth/affiliations.json";
pub const TRUTH: &str = "synth/truth.json";

pub fn run(ctx: &mut Context, written: &mut Written) -> Result<(), CliError> {
    let corpus = generate_corpus(&ctx.config.synth).map_err(|e| CliError::Validation(e.to_string()))?;
    tracing::info!(records = corpus.records.len(), campaigns = corpus.truth.campaigns.len(), "corpus generated");

    ctx.write_with(written, CORPUS, |w| write_records(w, &corpus.records).map_err(|e| CliError::runtime(CORPUS, e)))?;
    ctx.write_with(written, PROFILES, |w| {
        for p in corpus.profiles.values() {
            let line = serde_json::to_string(p).map_err(|e| CliError::runtime(PROFILES, e))?;
            writeln!(w, "{line}").map_err(|e| CliError::runtime(PROFILES, e))?;
        }
        Ok(())
    })?;
    ctx.write_json(written, LEXICON, &corpus.vocabulary.lexicon().to_file())?;
    ctx.write_with(written, ANNOTATIONS, |w| {
        corpus.vocabulary.annotations().write_csv(w).map_err(|e| CliError::runtime(ANNOTATIONS, e))
    })?;
    let affiliations = corpus.vocabulary.affiliations(ctx.config.influence.affiliation_baseline);
    let mut json = affiliations.to_json();
    json.push('\n');
    ctx.write_with(written, AFFILIATIONS, |w| w.write_all(json.as_bytes()).map_err(|e| CliError::runtime(AFFILIATIONS, e)))?;
    ctx.write_json(written, TRUTH, &corpus.truth)
}
