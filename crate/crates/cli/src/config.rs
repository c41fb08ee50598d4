//! Settings from flags, an optional TOML file and the environment. Flags win.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use proofcloud_bench::Format;
use proofcloud_kernel::KernelVersion;
use serde::Deserialize;

use crate::diag::{Diag, Failure};

pub const DEFAULT_BIND: &str = "127.0.0.1:8080";
pub const DEFAULT_REPS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VersionMode {
    #[default]
    Auto,
    Force(KernelVersion),
}

impl VersionMode {
    pub fn forced(self) -> Option<KernelVersion> {
        match self {
            VersionMode::Auto => None,
            VersionMode::Force(v) => Some(v),
        }
    }
}

impl FromStr for VersionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<VersionMode, String> {
        match s {
            "auto" => Ok(VersionMode::Auto),
            "5" => Ok(VersionMode::Force(KernelVersion::V5)),
            "6" => Ok(VersionMode::Force(KernelVersion::V6)),
            _ => Err(format!("expected 5, 6 or auto, got `{s}`")),
        }
    }
}

/// Keys accepted in the config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub version_mode: Option<String>,
    pub jobs: Option<usize>,
    pub strict: Option<bool>,
    pub reps: Option<usize>,
    pub bind: Option<String>,
    pub format: Option<String>,
    pub data: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, Failure> {
        let usage = |m: String| Failure::Usage(Diag::new("config", Some(path), None, m));
        let text = std::fs::read_to_string(path).map_err(|e| usage(e.to_string()))?;
        toml::from_str(&text).map_err(|e| usage(e.to_string()))
    }
}

/// Resolved settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Settings {
    pub version_mode: VersionMode,
    pub jobs: Option<usize>,
    pub strict: bool,
    pub reps: usize,
    pub bind: String,
    pub format: Format,
    pub data: Option<PathBuf>,
}

pub struct Flags {
    pub version_mode: Option<VersionMode>,
    pub jobs: Option<usize>,
    pub strict: bool,
    pub reps: Option<usize>,
    pub bind: Option<String>,
    pub format: Option<Format>,
    pub data: Option<PathBuf>,
}

impl Settings {
    pub fn merge(flags: Flags, file: FileConfig) -> Result<Settings, Failure> {
        let bad = |key: &str, m: String| Failure::Usage(Diag::new("config", None, None, format!("{key}: {m}")));
        let version_mode = match (flags.version_mode, file.version_mode) {
            (Some(v), _) => v,
            (None, Some(s)) => s.parse().map_err(|m| bad("version-mode", m))?,
            (None, None) => VersionMode::Auto,
        };
        let format = match (flags.format, file.format) {
            (Some(f), _) => f,
            (None, Some(s)) => s.parse().map_err(|m: String| bad("format", m))?,
            (None, None) => Format::Text,
        };
        let jobs = flags.jobs.or(file.jobs);
        if jobs == Some(0) {
            return Err(bad("jobs", "must be at least 1".into()));
        }
        Ok(Settings {
            version_mode,
            jobs,
            strict: flags.strict || file.strict.unwrap_or(false),
            reps: flags.reps.or(file.reps).unwrap_or(DEFAULT_REPS),
            bind: flags.bind.or(file.bind).unwrap_or_else(|| DEFAULT_BIND.to_string()),
            format,
            data: flags.data.or(file.data),
        })
    }

    /// Relative inputs missing from the working directory are looked up
    /// under the data root.
    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_relative() && !p.exists() {
            if let Some(root) = &self.data {
                let q = root.join(p);
                if q.exists() {
                    return q;
                }
            }
        }
        p.to_path_buf()
    }

    /// Resolves inputs and fails before any work if one is missing.
    pub fn inputs(&self, paths: &[PathBuf]) -> Result<Vec<PathBuf>, Failure> {
        paths
            .iter()
            .map(|p| {
                let q = self.resolve(p);
                if q.exists() {
                    Ok(q)
                } else {
                    Err(Failure::Usage(Diag::new("args", Some(p), None, "no such file or directory")))
                }
            })
            .collect()
    }
}
