use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::corpus::{LanguageMap, LoadOptions};
use crate::eval::Mode;
use crate::index::TokenizerOptions;
use crate::rank::{Alpha, Technique, DEFAULT_TOP_K};
use crate::translate::{ServiceConfig, DEFAULT_BATCH_SIZE};

const REQUIRED_KEYS: [&str; 3] = ["source_root", "reports", "output_dir"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    #[default]
    Identity,
    Glossary,
    Service,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::Identity => "identity",
            BackendKind::Glossary => "glossary",
            BackendKind::Service => "service",
        })
    }
}

impl FromStr for BackendKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identity" => Ok(BackendKind::Identity),
            "glossary" => Ok(BackendKind::Glossary),
            "service" => Ok(BackendKind::Service),
            other => Err(format!("unknown translator {other:?} (expected identity, glossary or service)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranslatorConfig {
    #[serde(default)]
    pub backend: BackendKind,
    /// TSV glossary, required by the glossary backend.
    #[serde(default)]
    pub glossary: Option<PathBuf>,
    /// Endpoint settings, required by the service backend.
    #[serde(default)]
    pub service: Option<ServiceConfig>,
    #[serde(default = "default_batch_size")]
    pub batch_size: usize,
    /// Fail on the first backend error instead of leaving text untranslated.
    #[serde(default)]
    pub strict: bool,
}

impl Default for TranslatorConfig {
    fn default() -> Self {
        Self {
            backend: BackendKind::Identity,
            glossary: None,
            service: None,
            batch_size: DEFAULT_BATCH_SIZE,
            strict: false,
        }
    }
}

fn default_batch_size() -> usize {
    DEFAULT_BATCH_SIZE
}

fn default_include() -> Vec<String> {
    LoadOptions::default().include_patterns
}

fn default_top_k() -> usize {
    DEFAULT_TOP_K
}

fn default_technique() -> Technique {
    Technique::BugLocator
}

fn default_mode() -> Mode {
    Mode::DirectPlusIndirect
}

/// Project settings, read from JSON. Relative paths resolve against the
/// directory holding the config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectConfig {
    pub source_root: PathBuf,
    /// JSONL bug reports.
    pub reports: PathBuf,
    /// Every artifact is written below this directory.
    pub output_dir: PathBuf,
    #[serde(default = "default_include")]
    pub include_patterns: Vec<String>,
    #[serde(default)]
    pub language_map: LanguageMap,
    #[serde(default)]
    pub translator: TranslatorConfig,
    #[serde(default)]
    pub cache: Option<PathBuf>,
    #[serde(default)]
    pub tokenizer: TokenizerOptions,
    #[serde(default)]
    pub alpha: Alpha,
    #[serde(default = "default_top_k")]
    pub top_k: usize,
    #[serde(default = "default_technique")]
    pub technique: Technique,
    /// Hand-written qrels; oracles come from report fixed files when absent.
    #[serde(default)]
    pub qrels: Option<PathBuf>,
    #[serde(default = "default_mode")]
    pub mode: Mode,
}

impl ProjectConfig {
    /// Minimal config with defaults for every optional key.
    pub fn new(source_root: impl Into<PathBuf>, reports: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            source_root: source_root.into(),
            reports: reports.into(),
            output_dir: output_dir.into(),
            include_patterns: default_include(),
            language_map: LanguageMap::default(),
            translator: TranslatorConfig::default(),
            cache: None,
            tokenizer: TokenizerOptions::default(),
            alpha: Alpha::default(),
            top_k: DEFAULT_TOP_K,
            technique: default_technique(),
            qrels: None,
            mode: default_mode(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&text, base).map_err(|e| match e {
            PipelineError::Config { message, .. } => PipelineError::Config {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })
    }

    /// Parse config JSON, resolving relative paths against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, PipelineError> {
        let bad = |message: String| PipelineError::Config {
            path: PathBuf::new(),
            message,
        };
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| bad("config must be a JSON object".into()))?;
        if let Some(key) = REQUIRED_KEYS.iter().find(|k| !obj.contains_key(**k)) {
            return Err(PipelineError::MissingKey((*key).to_string()));
        }
        let mut config: ProjectConfig = serde_json::from_value(value).map_err(|e| bad(e.to_string()))?;
        config.resolve_paths(base);
        config.validate()?;
        Ok(config)
    }

    fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.source_root);
        fix(&mut self.reports);
        fix(&mut self.output_dir);
        if let Some(p) = &mut self.cache {
            fix(p);
        }
        if let Some(p) = &mut self.qrels {
            fix(p);
        }
        if let Some(p) = &mut self.translator.glossary {
            fix(p);
        }
    }

    /// Check cross-field constraints. Run again after applying overrides.
    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.top_k == 0 {
            return Err(PipelineError::Invalid("top_k must be at least 1".into()));
        }
        if self.translator.batch_size == 0 {
            return Err(PipelineError::Invalid("translator.batch_size must be at least 1".into()));
        }
        match self.translator.backend {
            BackendKind::Glossary if self.translator.glossary.is_none() => {
                Err(PipelineError::MissingKey("translator.glossary".into()))
            }
            BackendKind::Service if self.translator.service.is_none() => {
                Err(PipelineError::MissingKey("translator.service".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn load_options(&self) -> LoadOptions {
        LoadOptions {
            include_patterns: self.include_patterns.clone(),
            language_map: self.language_map.clone(),
            permissive: false,
        }
    }

    pub fn spans_path(&self) -> PathBuf {
        self.output_dir.join("spans.jsonl")
    }

    /// Root of the translated copy of the source tree.
    pub fn translated_root(&self) -> PathBuf {
        self.output_dir.join("translated")
    }

    pub fn translated_reports_path(&self) -> PathBuf {
        self.output_dir.join("reports.translated.jsonl")
    }

    /// Index over translated sources, or over the original sources.
    pub fn index_path(&self, translated_sources: bool) -> PathBuf {
        self.output_dir.join(if translated_sources {
            "index.json"
        } else {
            "index.untranslated.json"
        })
    }

    pub fn run_path(&self, technique: Technique, translated_sources: bool) -> PathBuf {
        let suffix = if translated_sources { "" } else { ".untranslated" };
        self.output_dir.join("runs").join(format!("{technique}{suffix}.run"))
    }
}
