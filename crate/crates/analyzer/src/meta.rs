//! Package metadata files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{AnalyzeError, Result};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default)]
pub struct PackageMeta {
    pub name: String,
    pub author: String,
    pub subpackages: Vec<String>,
    pub date_retrieved: String,
    pub requires: Vec<String>,
    pub comments: String,
    /// Article file, relative to the metadata file.
    pub article: Option<String>,
    /// Export names in export order; missing ones fall back to `proof #k`.
    pub theorem_names: Vec<String>,
}

impl PackageMeta {
    pub fn named(name: impl Into<String>) -> PackageMeta {
        PackageMeta { name: name.into(), ..PackageMeta::default() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default)]
pub struct VerificationMeta {
    pub software_engineer_for_verification: String,
    pub software_for_verification: String,
    pub pc_specification: String,
    pub comments: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default)]
pub struct CorpusMeta {
    pub packages: Vec<PackageMeta>,
    /// Article whose first export states the axiom of choice.
    pub choice_axiom: Option<String>,
    pub verification: VerificationMeta,
    #[serde(skip)]
    pub dir: PathBuf,
}

impl CorpusMeta {
    pub fn load(path: &Path) -> Result<CorpusMeta> {
        let text = std::fs::read_to_string(path).map_err(|e| AnalyzeError::Meta(format!("{}: {e}", path.display())))?;
        let mut m: CorpusMeta =
            serde_json::from_str(&text).map_err(|e| AnalyzeError::Meta(format!("{}: {e}", path.display())))?;
        m.dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(m)
    }

    pub fn package(&self, name: &str) -> Option<&PackageMeta> {
        self.packages.iter().find(|p| p.name == name)
    }

    pub fn resolve(&self, rel: &str) -> PathBuf {
        self.dir.join(rel)
    }
}
