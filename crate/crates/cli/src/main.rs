use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use terrace_cli::{run, CliError, PipelineConfig, Stage, Target};
use tracing_subscriber::EnvFilter;

/// Political-content analysis pipeline for fan-community corpora.
#[derive(Debug, Parser)]
#[command(name = "terrace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Pipeline config (TOML), or a previous run's manifest.json.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory. Overrides the config's `paths.output`.
    #[arg(long, global = true, env = "TERRACE_OUT")]
    out: Option<PathBuf>,
    /// Replaces every seed in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run only the named stage; fail if upstream artifacts are missing.
    #[arg(long, global = true)]
    stage_only: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    Extract,
    Networks,
    Metrics,
    Communities,
    Themes,
    Influence,
    Synth,
    Report,
    /// Every stage in order.
    All,
}

impl Command {
    fn target(&self, only: bool) -> Target {
        let stage = match self {
            Command::All => return Target::All,
            Command::Extract => Stage::Extract,
            Command::Networks => Stage::Networks,
            Command::Metrics => Stage::Metrics,
            Command::Communities => Stage::Communities,
            Command::Themes => Stage::Themes,
            Command::Influence => Stage::Influence,
            Command::Synth => Stage::Synth,
            Command::Report => Stage::Report,
        };
        Target::Stage { stage, only }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let mut config = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
        config.synth.seed = seed;
        config.networks.seed = Some(seed);
        config.communities.seed = Some(seed);
    }
    let out = cli.out.clone().or_else(|| config.paths.output.clone()).unwrap_or_else(|| PathBuf::from("out"));
    run(cli.command.target(cli.stage_only), config, &out)
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")))
        .with_writer(std::io::stderr)
        .init();
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("terrace: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
