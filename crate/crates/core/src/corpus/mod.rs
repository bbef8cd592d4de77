//! Source tree and bug report loading.
//!
//! A [`Corpus`] is the frozen set of source files a query is ranked against.
//! Documents are ordered by path and numbered `0..len`, so the same tree and
//! include patterns always produce the same corpus.

mod filter;
mod report;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use globset::{Glob, GlobSet, GlobSetBuilder};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

pub use filter::{filter_usable_reports, ExclusionReason, FilteredReports};
pub use report::{load_bug_reports, parse_bug_reports, write_bug_reports, BugReport};

/// Stable document number assigned at load time.
pub type DocId = usize;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read source root {path}: {source}")]
    UnreadableRoot {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} is not valid UTF-8 (first invalid byte at offset {offset})")]
    Undecodable { path: String, offset: usize },
    #[error("invalid include pattern {pattern:?}: {message}")]
    Pattern { pattern: String, message: String },
    #[error("duplicate document path {0}")]
    DuplicatePath(String),
    #[error("{path}:{line}: {message}")]
    MalformedReport {
        path: String,
        line: usize,
        message: String,
    },
    #[error("duplicate bug report id {0:?}")]
    DuplicateReportId(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Java,
    #[serde(rename = "csharp")]
    CSharp,
    Generic,
}

impl Language {
    pub fn as_str(self) -> &'static str {
        match self {
            Language::Java => "java",
            Language::CSharp => "csharp",
            Language::Generic => "generic",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "java" => Ok(Language::Java),
            "csharp" | "c#" | "cs" => Ok(Language::CSharp),
            "generic" => Ok(Language::Generic),
            other => Err(format!("unknown language {other:?}")),
        }
    }
}

/// Maps file extensions (without the dot, case-insensitive) to languages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LanguageMap(BTreeMap<String, Language>);

impl LanguageMap {
    pub fn new() -> Self {
        Self(BTreeMap::new())
    }

    pub fn insert(&mut self, extension: &str, language: Language) {
        self.0.insert(normalize_extension(extension), language);
    }

    /// Language for `path`; extensions missing from the map are [`Language::Generic`].
    pub fn language_for(&self, path: &str) -> Language {
        extension_of(path)
            .and_then(|ext| self.0.get(&ext).copied())
            .unwrap_or(Language::Generic)
    }

    /// Mapped extensions, normalized.
    pub fn extensions(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }
}

impl Default for LanguageMap {
    fn default() -> Self {
        let mut map = Self::new();
        map.insert("java", Language::Java);
        map.insert("cs", Language::CSharp);
        map
    }
}

impl FromIterator<(String, Language)> for LanguageMap {
    fn from_iter<I: IntoIterator<Item = (String, Language)>>(iter: I) -> Self {
        let mut map = Self::new();
        for (ext, lang) in iter {
            map.insert(&ext, lang);
        }
        map
    }
}

/// One source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceDocument {
    pub doc_id: DocId,
    /// Repo-relative path with forward slashes.
    pub path: String,
    pub language: Language,
    pub raw_text: String,
}

impl SourceDocument {
    pub fn byte_len(&self) -> usize {
        self.raw_text.len()
    }

    /// Same document with different contents.
    pub fn with_text(&self, raw_text: String) -> Self {
        Self {
            doc_id: self.doc_id,
            path: self.path.clone(),
            language: self.language,
            raw_text,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub root: PathBuf,
    pub documents: Vec<SourceDocument>,
}

impl Corpus {
    /// Build a corpus from in-memory `(path, language, text)` triples.
    ///
    /// Paths are normalized and sorted; ids are assigned in sorted order.
    pub fn from_sources<I, P, T>(root: impl Into<PathBuf>, sources: I) -> Result<Self, CorpusError>
    where
        I: IntoIterator<Item = (P, Language, T)>,
        P: AsRef<str>,
        T: Into<String>,
    {
        let mut docs: Vec<(String, Language, String)> = sources
            .into_iter()
            .map(|(p, lang, text)| (normalize_path(p.as_ref()), lang, text.into()))
            .collect();
        docs.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = docs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(CorpusError::DuplicatePath(w[0].0.clone()));
        }
        let documents = docs
            .into_iter()
            .enumerate()
            .map(|(doc_id, (path, language, raw_text))| SourceDocument {
                doc_id,
                path,
                language,
                raw_text,
            })
            .collect();
        Ok(Self {
            root: root.into(),
            documents,
        })
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn get(&self, path: &str) -> Option<&SourceDocument> {
        self.documents
            .binary_search_by(|d| d.path.as_str().cmp(path))
            .ok()
            .map(|i| &self.documents[i])
    }

    pub fn contains(&self, path: &str) -> bool {
        self.get(path).is_some()
    }

    pub fn paths(&self) -> impl Iterator<Item = &str> {
        self.documents.iter().map(|d| d.path.as_str())
    }

    /// Replace every document's text, keeping ids, paths and languages.
    pub fn map_documents<F>(&self, mut f: F) -> Corpus
    where
        F: FnMut(&SourceDocument) -> SourceDocument,
    {
        Corpus {
            root: self.root.clone(),
            documents: self.documents.iter().map(&mut f).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Glob patterns matched against repo-relative paths. Empty means every file.
    pub include_patterns: Vec<String>,
    pub language_map: LanguageMap,
    /// Skip undecodable files (with a record in [`LoadedTree::rejected`])
    /// instead of failing the load.
    pub permissive: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            include_patterns: vec!["**/*.java".into(), "**/*.cs".into()],
            language_map: LanguageMap::default(),
            permissive: false,
        }
    }
}

/// A file left out of a permissive load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedFile {
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct LoadedTree {
    pub corpus: Corpus,
    pub rejected: Vec<RejectedFile>,
}

/// Load every file under `root` matching the include patterns.
pub fn load_source_tree(root: &Path, options: &LoadOptions) -> Result<LoadedTree, CorpusError> {
    let meta = std::fs::metadata(root).map_err(|source| CorpusError::UnreadableRoot {
        path: root.to_path_buf(),
        source,
    })?;
    if !meta.is_dir() {
        return Err(CorpusError::UnreadableRoot {
            path: root.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotADirectory, "not a directory"),
        });
    }
    let globs = compile_patterns(&options.include_patterns)?;

    let mut candidates = Vec::new();
    for entry in WalkDir::new(root).follow_links(false).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(root).to_path_buf();
            let source = e
                .into_io_error()
                .unwrap_or_else(|| std::io::Error::other("directory walk failed"));
            if path == root {
                CorpusError::UnreadableRoot { path, source }
            } else {
                CorpusError::Io { path, source }
            }
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = entry
            .path()
            .strip_prefix(root)
            .expect("walkdir yields paths under root");
        let rel = normalize_path(&rel.to_string_lossy());
        if globs.as_ref().is_none_or(|g| g.is_match(&rel)) {
            candidates.push((rel, entry.into_path()));
        }
    }
    candidates.sort_by(|a, b| a.0.cmp(&b.0));

    let read: Vec<Result<(String, Vec<u8>), CorpusError>> = candidates
        .into_par_iter()
        .map(|(rel, abs)| {
            std::fs::read(&abs)
                .map(|bytes| (rel, bytes))
                .map_err(|source| CorpusError::Io { path: abs, source })
        })
        .collect();

    let mut sources = Vec::new();
    let mut rejected = Vec::new();
    for item in read {
        let (rel, bytes) = item?;
        match String::from_utf8(bytes) {
            Ok(text) => {
                let lang = options.language_map.language_for(&rel);
                sources.push((rel, lang, text));
            }
            Err(e) => {
                let offset = e.utf8_error().valid_up_to();
                if !options.permissive {
                    return Err(CorpusError::Undecodable { path: rel, offset });
                }
                rejected.push(RejectedFile {
                    reason: format!("not valid UTF-8 (first invalid byte at offset {offset})"),
                    path: rel,
                });
            }
        }
    }
    let corpus = Corpus::from_sources(root, sources)?;
    Ok(LoadedTree { corpus, rejected })
}

fn compile_patterns(patterns: &[String]) -> Result<Option<GlobSet>, CorpusError> {
    if patterns.is_empty() {
        return Ok(None);
    }
    let mut builder = GlobSetBuilder::new();
    for pattern in patterns {
        let glob = Glob::new(pattern).map_err(|e| CorpusError::Pattern {
            pattern: pattern.clone(),
            message: e.to_string(),
        })?;
        builder.add(glob);
    }
    builder
        .build()
        .map(Some)
        .map_err(|e| CorpusError::Pattern {
            pattern: patterns.join(", "),
            message: e.to_string(),
        })
}

/// Forward slashes, no leading `./`.
pub fn normalize_path(path: &str) -> String {
    let mut p = path.replace('\\', "/");
    while let Some(rest) = p.strip_prefix("./") {
        p = rest.to_string();
    }
    p
}

/// Lowercased extension without the dot.
pub fn extension_of(path: &str) -> Option<String> {
    let name = path.rsplit('/').next()?;
    let (stem, ext) = name.rsplit_once('.')?;
    if stem.is_empty() || ext.is_empty() {
        return None;
    }
    Some(ext.to_ascii_lowercase())
}

/// Accepts `.java`, `java` or `JAVA`.
pub fn normalize_extension(ext: &str) -> String {
    ext.trim_start_matches('.').to_ascii_lowercase()
}

/// Normalized extension set, for filters that take user-supplied extensions.
pub fn extension_set<I, S>(exts: I) -> HashSet<String>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    exts.into_iter()
        .map(|e| normalize_extension(e.as_ref()))
        .collect()
}
