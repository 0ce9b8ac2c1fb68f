use serde::Serialize;
use terrace::ingest::{extract_political_subset, summarize_with, write_records, ExtractionStats};

use super::{Context, Written};
use crate::error::CliError;

pub const POLITICAL: &str = "extract/political.jsonl";
pub const SUMMARY: &str = "extract/summary.json";
pub const CORPUS_SUMMARY: &str = "extract/corpus_summary.json";
pub const STATS: &str = "extract/stats.json";

const TOP_HASHTAGS: usize = 20;

#[derive(Serialize)]
struct Stats<'a> {
    malformed_lines: usize,
    #[serde(flatten)]
    extraction: &'a ExtractionStats,
}

pub fn run(ctx: &mut Context, written: &mut Written) -> Result<(), CliError> {
    let (corpus, malformed) = ctx.corpus_with_skips()?;
    let lexicon = ctx.lexicon()?;
    let extraction = extract_political_subset(&corpus, &lexicon);
    tracing::info!(
        input = corpus.len(),
        political = extraction.stats.political,
        context = extraction.stats.context_parents,
        "political subset extracted"
    );
    ctx.write_with(written, POLITICAL, |w| {
        write_records(w, &extraction.records).map_err(|e| CliError::runtime(POLITICAL, e))
    })?;
    ctx.write_json(written, SUMMARY, &summarize_with(&extraction.records, Some(&lexicon), TOP_HASHTAGS))?;
    ctx.write_json(written, CORPUS_SUMMARY, &summarize_with(&corpus, Some(&lexicon), TOP_HASHTAGS))?;
    ctx.write_json(written, STATS, &Stats { malformed_lines: malformed, extraction: &extraction.stats })
}
