use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use terrace::influence::{
    detect_activist_clusters, detect_hijacks, detect_megaphones, write_findings, CorpusIndex, DetectorConfig,
    FindingKind, InfluenceFinding, MegaphoneNetworks,
};

use super::networks::USER_SIMILARITY;
use super::{Context, Written};
use crate::error::CliError;

pub const FINDINGS: &str = "influence/findings.jsonl";
pub const SUMMARY: &str = "influence/summary.json";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub counts: BTreeMap<FindingKind, usize>,
    pub config: DetectorConfig,
}

pub fn run(ctx: &mut Context, written: &mut Written) -> Result<(), CliError> {
    let config = ctx.config.influence.detectors();
    let corpus = ctx.corpus()?;
    let political = ctx.political()?;
    let annotations = ctx.annotations()?;
    let affiliations = ctx.affiliations()?;
    let profiles = ctx.profiles()?;
    let user_communities = ctx.partition(USER_SIMILARITY)?.to_map();
    let retweet = ctx.network("retweet")?;
    let retweet_partition = ctx.partition("retweet")?;
    let (quote, reply, mention) = (ctx.network("quote")?, ctx.network("reply")?, ctx.network("mention")?);

    let index = CorpusIndex::new(&corpus);
    let mut findings: Vec<InfluenceFinding> =
        detect_hijacks(&index, &annotations, &affiliations, &profiles, Some(&user_communities), &config);
    findings.extend(detect_activist_clusters(&retweet, &retweet_partition, &political, &config));
    let networks = MegaphoneNetworks { quote: &quote, reply: &reply, mention: &mention };
    findings.extend(detect_megaphones(networks, &index, &annotations, Some(&user_communities), &config));

    let mut counts: BTreeMap<FindingKind, usize> =
        [FindingKind::Hijack, FindingKind::EmbeddedActivism, FindingKind::Megaphone].into_iter().map(|k| (k, 0)).collect();
    for f in &findings {
        *counts.entry(f.kind).or_default() += 1;
    }
    tracing::info!(?counts, "detectors done");
    ctx.write_with(written, FINDINGS, |w| write_findings(w, &findings).map_err(|e| CliError::runtime(FINDINGS, e)))?;
    ctx.write_json(written, SUMMARY, &Summary { counts, config })
}
