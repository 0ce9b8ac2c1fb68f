use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use terrace::graphs::{
    Axis, ProjectionConfig, DEFAULT_ALPHA, DEFAULT_MIN_HASHTAG_USES, DEFAULT_MIN_USER_TWEETS, DEFAULT_PERMUTATIONS,
    HASHTAG_MIN_SIMILARITY, USER_MIN_SIMILARITY,
};
use terrace::influence::{ActivismConfig, DetectorConfig, HijackConfig, MegaphoneConfig};
use terrace::metrics::{PageRankConfig, DEFAULT_TOP_K};
use terrace::synth::SynthConfig;

use crate::error::CliError;

/// Everything a run needs. Loaded from TOML; every field has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineConfig {
    /// Master seed. Stage seeds left unset resolve to this value.
    pub seed: u64,
    pub paths: Paths,
    pub synth: SynthConfig,
    pub networks: NetworkConfig,
    pub metrics: MetricConfig,
    pub communities: CommunityConfig,
    pub influence: InfluenceConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: 0,
            paths: Paths::default(),
            synth: SynthConfig::default(),
            networks: NetworkConfig::default(),
            metrics: MetricConfig::default(),
            communities: CommunityConfig::default(),
            influence: InfluenceConfig::default(),
        }
    }
}

/// Input files. Unset inputs come from the `synth` stage.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Paths {
    pub corpus: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub profiles: Option<PathBuf>,
    pub annotations: Option<PathBuf>,
    pub affiliations: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NetworkConfig {
    pub min_hashtag_uses: u64,
    pub min_user_tweets: u64,
    pub user_min_similarity: f64,
    pub hashtag_min_similarity: f64,
    pub alpha: f64,
    pub permutations: usize,
    pub binary: bool,
    pub seed: Option<u64>,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        NetworkConfig {
            min_hashtag_uses: DEFAULT_MIN_HASHTAG_USES,
            min_user_tweets: DEFAULT_MIN_USER_TWEETS,
            user_min_similarity: USER_MIN_SIMILARITY,
            hashtag_min_similarity: HASHTAG_MIN_SIMILARITY,
            alpha: DEFAULT_ALPHA,
            permutations: DEFAULT_PERMUTATIONS,
            binary: false,
            seed: None,
        }
    }
}

impl NetworkConfig {
    pub fn projection(&self, axis: Axis, seed: u64) -> ProjectionConfig {
        let min_similarity = match axis {
            Axis::User => self.user_min_similarity,
            Axis::Hashtag => self.hashtag_min_similarity,
        };
        ProjectionConfig {
            axis,
            min_similarity,
            alpha: self.alpha,
            permutations: self.permutations,
            rng_seed: seed,
            binary: self.binary,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MetricConfig {
    /// Co-occurrence edges must be heavier than this to survive filtering.
    pub cooccurrence_min_weight: f64,
    /// The reported hashtag core keeps nodes whose core number exceeds this.
    pub core_above: usize,
    pub top_k: usize,
    pub pagerank: PageRankConfig,
}

impl Default for MetricConfig {
    fn default() -> Self {
        MetricConfig {
            cooccurrence_min_weight: 25.0,
            core_above: 25,
            top_k: DEFAULT_TOP_K,
            pagerank: PageRankConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CommunityConfig {
    pub resolution: f64,
    pub seed: Option<u64>,
    pub min_community_size: usize,
    pub theme_count: usize,
}

impl Default for CommunityConfig {
    fn default() -> Self {
        CommunityConfig {
            resolution: 1.0,
            seed: None,
            min_community_size: terrace::communities::DEFAULT_MIN_COMMUNITY_SIZE,
            theme_count: terrace::communities::DEFAULT_THEME_COUNT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InfluenceConfig {
    pub hijack: HijackConfig,
    pub activism: ActivismConfig,
    pub megaphone: MegaphoneConfig,
    /// Baseline club-affiliation rate attached to generated affiliation
    /// profiles when no affiliation file is given.
    pub affiliation_baseline: f64,
}

impl Default for InfluenceConfig {
    fn default() -> Self {
        let d = DetectorConfig::default();
        InfluenceConfig { hijack: d.hijack, activism: d.activism, megaphone: d.megaphone, affiliation_baseline: 0.22 }
    }
}

impl InfluenceConfig {
    pub fn detectors(&self) -> DetectorConfig {
        DetectorConfig { hijack: self.hijack, activism: self.activism, megaphone: self.megaphone }
    }
}

/// Seeds after defaulting, as recorded in the manifest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seeds {
    pub master: u64,
    pub synth: u64,
    pub networks: u64,
    pub communities: u64,
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let mut config: PipelineConfig =
            toml::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))?;
        let table: toml::Table = toml::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))?;
        let synth_seed_set = table.get("synth").and_then(|s| s.get("seed")).is_some();
        if !synth_seed_set {
            config.synth.seed = config.seed;
        }
        Ok(config)
    }

    /// Reads a TOML config, or the config embedded in a run manifest when
    /// the path ends in `.json`.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            let manifest: crate::store::Manifest = serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("{}: not a run manifest: {e}", path.display())))?;
            return Ok(manifest.config);
        }
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    /// Fills every unset seed from the master seed. The synth seed is
    /// already resolved at load time.
    pub fn resolve_seeds(&mut self) -> Seeds {
        let networks = *self.networks.seed.get_or_insert(self.seed);
        let communities = *self.communities.seed.get_or_insert(self.seed);
        Seeds { master: self.seed, synth: self.synth.seed, networks, communities }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let field = |name: &str, msg: String| Err(CliError::Validation(format!("{name}: {msg}")));
        for axis in [Axis::User, Axis::Hashtag] {
            if let Err(e) = self.networks.projection(axis, 0).validate() {
                return field("networks", e.to_string());
            }
        }
        if !(self.metrics.cooccurrence_min_weight >= 0.0) {
            return field("metrics.cooccurrence_min_weight", "must be non-negative".into());
        }
        if self.metrics.top_k == 0 {
            return field("metrics.top_k", "must be positive".into());
        }
        let pr = &self.metrics.pagerank;
        if !(0.0..1.0).contains(&pr.damping) || !(pr.tolerance > 0.0) || pr.max_iters == 0 {
            return field("metrics.pagerank", "need 0 <= damping < 1, tolerance > 0, max_iters > 0".into());
        }
        if !(self.communities.resolution > 0.0) {
            return field("communities.resolution", "must be positive".into());
        }
        if self.communities.theme_count == 0 {
            return field("communities.theme_count", "must be positive".into());
        }
        if let Err(e) = self.influence.detectors().validate() {
            return field("influence", e.to_string());
        }
        if !(0.0..=1.0).contains(&self.influence.affiliation_baseline) || self.influence.affiliation_baseline == 0.0 {
            return field("influence.affiliation_baseline", "must lie in (0, 1]".into());
        }
        if self.paths.corpus.is_none() {
            if let Err(e) = self.synth.validate() {
                return field("synth", e.to_string());
            }
        } else if self.paths.lexicon.is_none() {
            return field("paths.lexicon", "required when paths.corpus is set".into());
        }
        for (name, path) in [
            ("paths.corpus", &self.paths.corpus),
            ("paths.lexicon", &self.paths.lexicon),
            ("paths.profiles", &self.paths.profiles),
            ("paths.annotations", &self.paths.annotations),
            ("paths.affiliations", &self.paths.affiliations),
        ] {
            if let Some(p) = path {
                if !p.is_file() {
                    return field(name, format!("{} does not exist", p.display()));
                }
            }
        }
        Ok(())
    }

    /// True when the corpus is generated rather than read.
    pub fn synthetic(&self) -> bool {
        self.paths.corpus.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = PipelineConfig::default();
        assert_eq!(PipelineConfig::from_toml(&c.to_toml()).unwrap(), c);
        c.validate().unwrap();
    }

    #[test]
    fn shipped_config_spells_out_the_defaults() {
        let text = include_str!("../../../config/default.toml");
        assert_eq!(PipelineConfig::from_toml(text).unwrap(), PipelineConfig::default());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = PipelineConfig::from_toml("[metrics]\ntop_kk = 3\n").unwrap_err();
        assert!(err.to_string().contains("top_kk"), "{err}");
    }

    #[test]
    fn seeds_default_to_master() {
        let mut c = PipelineConfig::from_toml("seed = 7\n[communities]\nseed = 3\n").unwrap();
        let s = c.resolve_seeds();
        assert_eq!((s.synth, s.networks, s.communities), (7, 7, 3));
        let c = PipelineConfig::from_toml("seed = 7\n[synth]\nseed = 2\n").unwrap();
        assert_eq!(c.synth.seed, 2);
    }

    #[test]
    fn field_errors_name_the_field() {
        let c = PipelineConfig::from_toml("[influence.hijack]\nmax_affiliation_ratio = -1.0\n").unwrap();
        assert!(c.validate().unwrap_err().to_string().contains("influence"));
        let c = PipelineConfig::from_toml("[paths]\ncorpus = \"/nonexistent.jsonl\"\nlexicon = \"/x.json\"\n").unwrap();
        assert!(c.validate().unwrap_err().to_string().contains("paths.corpus"));
    }
}
