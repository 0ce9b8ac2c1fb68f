//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p terrace-cli --test acceptance`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use chrono::{TimeZone, Utc};
use serde_json::Value;
use terrace::communities::{louvain, LouvainConfig};
use terrace::graphs::{project_similarity, Axis, ProjectionConfig};
use terrace::influence::{read_findings, DetectorConfig, FindingKind};
use terrace::ingest::{extract_political_subset, summarize_with, Lexicon, TweetKind, TweetRecord};
use terrace::metrics::{betweenness, core_numbers, k_core, pagerank, PageRankConfig};
use terrace::synth::random::{erdos_renyi, planted_partition, random_bipartite};
use terrace::synth::{generate_corpus, GroundTruth, SynthConfig};
use terrace::{ExactGraph, Graph, Rational};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn projection_oracle() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut edges = 0;
    for seed in 0..50u64 {
        let users = 10 + (seed as usize * 7) % 31;
        let tags = 6 + (seed as usize * 5) % 25;
        let density = 0.15 + 0.3 * ((seed % 5) as f64 / 4.0);
        let matrix = random_bipartite(users, tags, density, 4, seed);
        for axis in [Axis::User, Axis::Hashtag] {
            let config = ProjectionConfig::for_axis(axis).with_seed(seed);
            let got = common::edge_map(&project_similarity::<f64>(&matrix, &config).unwrap().graph);
            edges += got.len();
            if got != common::projection_oracle(&matrix, &config) {
                mismatches.push(format!("{seed}/{axis:?}"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches.is_empty() && elapsed < Duration::from_secs(60),
        format!("50 matrices x 2 axes, {edges} retained edges, mismatches {mismatches:?}, {:.1}s (< 60s)", elapsed.as_secs_f64()),
    )
}

fn louvain_recovery() -> Outcome {
    let mut good = 0;
    let mut worst = f64::INFINITY;
    let mut non_monotone = Vec::new();
    for seed in 0..20u64 {
        let (g, truth) = planted_partition::<f64>(4, 30, 0.3, 0.01, seed);
        let p = louvain(&g, &LouvainConfig { seed, ..Default::default() });
        let nmi = common::nmi_oracle(&truth, &p.assignment);
        worst = worst.min(nmi);
        good += usize::from(nmi >= 0.95);
        let exact: ExactGraph = g.map_weights(|&w| Rational::from_float(w).unwrap());
        let q = louvain(&exact, &LouvainConfig { seed, ..Default::default() });
        let monotone = p.levels.windows(2).all(|w| w[0] <= w[1]) && q.levels.windows(2).all(|w| w[0] <= w[1]);
        if !monotone {
            non_monotone.push(seed);
        }
    }
    outcome(
        good >= 19 && non_monotone.is_empty(),
        format!("NMI >= 0.95 on {good}/20 seeds (need 19), min NMI {worst:.4}, non-monotone runs {non_monotone:?}"),
    )
}

fn centrality_exactness() -> Outcome {
    let mut failures = Vec::new();
    let mut max_sum_err = 0.0f64;
    for seed in 0..20u64 {
        let n = 20 + (seed as usize * 37) % 181;
        let p = 3.0 / n as f64;
        let directed = seed % 2 == 1;
        let g = erdos_renyi::<f64>(n, p, directed, seed);
        let exact: ExactGraph = g.map_weights(|&w| Rational::from_float(w).unwrap());
        if betweenness(&exact) != common::betweenness_oracle(&exact) {
            failures.push(format!("betweenness seed {seed}"));
        }
        let pr = pagerank(&g, &PageRankConfig::default()).unwrap();
        max_sum_err = max_sum_err.max((pr.iter().sum::<f64>() - 1.0).abs());
    }
    for n in [3usize, 17, 100, 200] {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::from_unit_edges(true, n, &edges).unwrap();
        let pr = pagerank(&g, &PageRankConfig::default()).unwrap();
        if pr.iter().any(|x| (x - 1.0 / n as f64).abs() > 1e-9) {
            failures.push(format!("cycle {n}"));
        }
    }
    for seed in 0..20u64 {
        let n = 5 + (seed as usize * 13) % 96;
        let g = erdos_renyi::<f64>(n, (6.0 / n as f64).min(1.0), false, 1000 + seed);
        let max = core_numbers(&g).into_iter().max().unwrap_or(0);
        for k in 0..=max + 1 {
            let got: std::collections::BTreeSet<String> = k_core(&g, k).node_ids().map(str::to_string).collect();
            if got != common::k_core_oracle(&g, k) {
                failures.push(format!("k-core seed {seed} k {k}"));
            }
        }
    }
    outcome(
        failures.is_empty() && max_sum_err <= 1e-9,
        format!("20 exact betweenness graphs (n <= 200), max |sum PageRank - 1| {max_sum_err:.1e}, 4 cycles, 20 k-core graphs (n <= 100); failures {failures:?}"),
    )
}

fn rule_fixtures() -> Vec<String> {
    let lex = Lexicon::new(["brexit"], ["tory"], ["vote"]).unwrap();
    let t = |id: &str, kind, parent: Option<&str>, text: &str, tags: &[&str]| TweetRecord {
        tweet_id: id.into(),
        user_id: format!("u-{id}"),
        timestamp: Utc.with_ymd_and_hms(2017, 1, 1, 0, 0, 0).unwrap(),
        text: text.into(),
        hashtags: tags.iter().map(|s| s.to_string()).collect(),
        kind,
        target_tweet_id: parent.map(str::to_string),
        target_user_id: parent.map(|p| format!("u-{p}")),
        mentioned_user_ids: Vec::new(),
    };
    let cases: Vec<(&str, Vec<TweetRecord>, Vec<&str>)> = vec![
        ("hashtag", vec![t("a", TweetKind::Original, None, "", &["brexit"])], vec!["a"]),
        ("keyword boundary", vec![t("a", TweetKind::Original, None, "history", &[]), t("b", TweetKind::Original, None, "Tory!", &[])], vec!["b"]),
        ("excluded term", vec![t("a", TweetKind::Original, None, "vote today", &["vote"])], vec![]),
        ("quoted parent", vec![t("p", TweetKind::Original, None, "kick-off", &[]), t("q", TweetKind::Quote, Some("p"), "tory", &[])], vec!["p", "q"]),
        ("replied parent", vec![t("p", TweetKind::Original, None, "kick-off", &[]), t("r", TweetKind::Reply, Some("p"), "", &["brexit"])], vec!["p", "r"]),
        ("downstream reply", vec![t("p", TweetKind::Original, None, "", &["brexit"]), t("r", TweetKind::Reply, Some("p"), "goal", &[])], vec!["p"]),
        ("one hop", vec![t("g", TweetKind::Original, None, "", &[]), t("p", TweetKind::Reply, Some("g"), "", &[]), t("r", TweetKind::Reply, Some("p"), "tory", &[])], vec!["p", "r"]),
        ("absent parent", vec![t("r", TweetKind::Reply, Some("gone"), "tory", &[])], vec!["r"]),
    ];
    let mut failed = Vec::new();
    for (name, corpus, expected) in cases {
        let got: Vec<String> = extract_political_subset(&corpus, &lex).records.into_iter().map(|r| r.tweet_id).collect();
        if got != expected {
            failed.push(name.to_string());
        }
    }
    failed
}

fn extraction_correctness() -> Outcome {
    let (mut tp, mut fp, mut fn_) = (0usize, 0usize, 0usize);
    for seed in 0..5 {
        let corpus = generate_corpus(&SynthConfig { seed, ..Default::default() }).unwrap();
        let got: std::collections::BTreeSet<String> = extract_political_subset(&corpus.records, &corpus.vocabulary.lexicon())
            .records
            .into_iter()
            .map(|r| r.tweet_id)
            .collect();
        let truth = corpus.truth.expected_extraction();
        tp += got.intersection(&truth).count();
        fp += got.difference(&truth).count();
        fn_ += truth.difference(&got).count();
    }
    let failed = rule_fixtures();
    let precision = tp as f64 / (tp + fp) as f64;
    let recall = tp as f64 / (tp + fn_) as f64;
    outcome(
        precision == 1.0 && recall == 1.0 && failed.is_empty(),
        format!("5 corpora: precision {precision} recall {recall} ({tp} selected); 8 rule fixtures, failed {failed:?}"),
    )
}

fn table_shape() -> Outcome {
    let corpus = generate_corpus(&SynthConfig::default()).unwrap();
    let lexicon = corpus.vocabulary.lexicon();
    let summary = summarize_with(&corpus.records, Some(&lexicon), 15);
    let targets = [(TweetKind::Original, 0.44), (TweetKind::Retweet, 0.35), (TweetKind::Quote, 0.14), (TweetKind::Reply, 0.07)];
    let max_dev = targets.iter().map(|&(k, t)| (summary.share_by_kind[&k] - t).abs()).fold(0.0, f64::max);
    let json = serde_json::to_value(&summary).unwrap();
    let fields = [
        "total_tweets",
        "date_range",
        "unique_users",
        "count_by_kind",
        "share_by_kind",
        "unique_hashtags",
        "top_political_hashtags",
        "political_keywords",
    ];
    let missing: Vec<&str> = fields.iter().copied().filter(|f| json.get(f).map_or(true, Value::is_null)).collect();
    let kinds_present = ["original", "retweet", "quote", "reply"].iter().all(|k| json["count_by_kind"].get(k).is_some());
    outcome(
        summary.total_tweets == 50_000 && max_dev <= 0.01 && missing.is_empty() && kinds_present,
        format!("{} tweets, max share deviation {max_dev:.4} (<= 0.01), missing fields {missing:?}", summary.total_tweets),
    )
}

#[derive(Default)]
struct Tally {
    planted: usize,
    recovered: usize,
    findings: usize,
    matched: usize,
}

fn score(truth: &GroundTruth, findings: &[terrace::influence::InfluenceFinding], tallies: &mut BTreeMap<FindingKind, Tally>) {
    for kind in [FindingKind::Hijack, FindingKind::EmbeddedActivism, FindingKind::Megaphone] {
        let t = tallies.entry(kind).or_default();
        let own: Vec<_> = findings.iter().filter(|f| f.kind == kind).collect();
        t.findings += own.len();
        t.matched += own.iter().filter(|f| truth.campaign_for(f).is_some()).count();
        for c in truth.campaigns_of(kind) {
            t.planted += 1;
            t.recovered += usize::from(own.iter().any(|f| truth.campaign_for(f) == Some(c)));
        }
    }
}

fn detector_closed_loop(pipeline: Option<(&Path, Duration)>) -> Outcome {
    let mut tallies = BTreeMap::new();
    for seed in 0..20 {
        let corpus = generate_corpus(&SynthConfig { seed, ..Default::default() }).unwrap();
        score(&corpus.truth, &common::run_detectors(&corpus, &DetectorConfig::default()), &mut tallies);
    }
    let mut pass = true;
    let mut parts = Vec::new();
    for (kind, t) in &tallies {
        let recall = t.recovered as f64 / t.planted as f64;
        let precision = if t.findings == 0 { 0.0 } else { t.matched as f64 / t.findings as f64 };
        pass &= recall >= 0.9 && precision >= 0.8;
        parts.push(format!("{kind} recall {recall:.2} precision {precision:.2} ({} findings)", t.findings));
    }
    match pipeline {
        Some((out, elapsed)) => {
            let truth: GroundTruth = serde_json::from_slice(&fs::read(out.join("synth/truth.json")).unwrap()).unwrap();
            let findings = read_findings(&fs::read(out.join("influence/findings.jsonl")).unwrap()[..]).unwrap();
            let mut t = BTreeMap::new();
            score(&truth, &findings, &mut t);
            let exact = t.values().all(|t| t.recovered == t.planted && t.matched == t.findings);
            pass &= exact && elapsed < Duration::from_secs(300);
            parts.push(format!("full pipeline at 50,000 tweets {:.1}s (< 300s), findings match truth: {exact}", elapsed.as_secs_f64()));
        }
        None => {
            pass = false;
            parts.push("full pipeline run failed".into());
        }
    }
    outcome(pass, format!("20 corpora: {}", parts.join("; ")))
}

fn tree(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.insert(path.strip_prefix(root).unwrap().to_string_lossy().into_owned(), fs::read(&path).unwrap());
            }
        }
    }
    out
}

fn run_all(out: &Path) -> Option<Duration> {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_terrace"))
        .args(["all", "--out"])
        .arg(out)
        .env("RUST_LOG", "warn")
        .status()
        .ok()?;
    status.success().then(|| start.elapsed())
}

fn determinism(a: &Path, b: &Path, ok: bool) -> Outcome {
    if !ok {
        return outcome(false, "an `all` run failed".into());
    }
    let (ta, tb) = (tree(a), tree(b));
    let differing: Vec<&String> = ta.keys().chain(tb.keys()).filter(|k| ta.get(*k) != tb.get(*k)).collect();
    outcome(
        differing.is_empty(),
        format!("two default `all` runs, {} files, {} bytes, differing {differing:?}", ta.len(), ta.values().map(Vec::len).sum::<usize>()),
    )
}

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let first = run_all(&a);
    let second = run_all(&b);

    let results = [
        ("projection oracle equivalence", projection_oracle()),
        ("louvain recovery", louvain_recovery()),
        ("centrality exactness", centrality_exactness()),
        ("extraction correctness", extraction_correctness()),
        ("corpus summary shape", table_shape()),
        ("detector closed loop", detector_closed_loop(first.map(|d| (a.as_path(), d)))),
        ("determinism", determinism(&a, &b, first.is_some() && second.is_some())),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        println!("{} {name}: {}", if r.pass { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("acceptance: {}/{} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
