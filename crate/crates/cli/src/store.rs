//! Output directory handling: lock file, atomic writes and the run manifest.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{PipelineConfig, Seeds};
use crate::error::CliError;

pub const LOCK_FILE: &str = ".terrace.lock";
pub const MANIFEST: &str = "manifest.json";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn sha256_file(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::runtime(path.display(), e))?;
    Ok(sha256_hex(&bytes))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputRecord {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    /// Artifact path relative to the output directory, with its digest.
    pub artifacts: BTreeMap<String, String>,
}

/// What produced the artifacts next to it. The embedded config, with its
/// seeds resolved, reruns the pipeline via `--config manifest.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub config_sha256: String,
    pub seeds: Seeds,
    pub config: PipelineConfig,
    pub inputs: BTreeMap<String, InputRecord>,
    pub stages: BTreeMap<String, StageRecord>,
}

impl Manifest {
    pub fn new(config: &PipelineConfig, seeds: Seeds) -> Self {
        let mut config = config.clone();
        config.paths.output = None;
        Manifest {
            tool: "terrace".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config_sha256: sha256_hex(config.to_toml().as_bytes()),
            seeds,
            config,
            inputs: BTreeMap::new(),
            stages: BTreeMap::new(),
        }
    }
}

/// An output directory held under an exclusive lock for the lifetime of
/// the value.
#[derive(Debug)]
pub struct OutDir {
    root: PathBuf,
    lock: PathBuf,
}

impl OutDir {
    pub fn open(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root)
            .map_err(|e| CliError::Validation(format!("output directory {} is not writable: {e}", root.display())))?;
        let lock = root.join(LOCK_FILE);
        match OpenOptions::new().write(true).create_new(true).open(&lock) {
            Ok(mut f) => {
                let _ = writeln!(f, "{}", std::process::id());
            }
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                return Err(CliError::Runtime(format!(
                    "{} is locked by another run; delete {} if no run is active",
                    root.display(),
                    lock.display()
                )))
            }
            Err(e) => {
                return Err(CliError::Validation(format!("output directory {} is not writable: {e}", root.display())))
            }
        }
        Ok(OutDir { root: root.to_path_buf(), lock })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, rel: &str) -> PathBuf {
        self.root.join(rel)
    }

    pub fn exists(&self, rel: &str) -> bool {
        self.path(rel).is_file()
    }

    /// Writes `rel` through a temporary file in the same directory and
    /// renames it into place. Returns the digest of what was written.
    pub fn write_with<F>(&self, rel: &str, fill: F) -> Result<String, CliError>
    where
        F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
    {
        let target = self.path(rel);
        let dir = target.parent().expect("artifact inside output dir");
        fs::create_dir_all(dir).map_err(|e| CliError::runtime(dir.display(), e))?;
        let tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::runtime(dir.display(), e))?;
        let mut hashing = HashingWriter { inner: BufWriter::new(tmp), hasher: Sha256::new() };
        fill(&mut hashing)?;
        hashing.flush().map_err(|e| CliError::runtime(rel, e))?;
        let digest = hex::encode(hashing.hasher.finalize());
        let tmp = hashing.inner.into_inner().map_err(|e| CliError::runtime(rel, e.error()))?;
        tmp.as_file().sync_all().map_err(|e| CliError::runtime(rel, e))?;
        tmp.persist(&target).map_err(|e| CliError::runtime(rel, e.error))?;
        Ok(digest)
    }

    pub fn write_bytes(&self, rel: &str, bytes: &[u8]) -> Result<String, CliError> {
        self.write_with(rel, |w| w.write_all(bytes).map_err(|e| CliError::runtime(rel, e)))
    }

    pub fn write_json<T: Serialize + ?Sized>(&self, rel: &str, value: &T) -> Result<String, CliError> {
        let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::runtime(rel, e))?;
        bytes.push(b'\n');
        self.write_bytes(rel, &bytes)
    }

    pub fn open_file(&self, rel: &str) -> Result<File, CliError> {
        File::open(self.path(rel)).map_err(|e| CliError::runtime(rel, e))
    }

    pub fn read_json<T: serde::de::DeserializeOwned>(&self, rel: &str) -> Result<T, CliError> {
        let bytes = fs::read(self.path(rel)).map_err(|e| CliError::runtime(rel, e))?;
        serde_json::from_slice(&bytes).map_err(|e| CliError::runtime(rel, e))
    }

    pub fn load_manifest(&self) -> Option<Manifest> {
        let bytes = fs::read(self.path(MANIFEST)).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    pub fn save_manifest(&self, manifest: &Manifest) -> Result<(), CliError> {
        self.write_json(MANIFEST, manifest).map(|_| ())
    }
}

impl Drop for OutDir {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.lock);
    }
}

struct HashingWriter<W> {
    inner: W,
    hasher: Sha256,
}

impl<W: Write> Write for HashingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}
