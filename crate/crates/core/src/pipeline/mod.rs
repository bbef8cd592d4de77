//! The end-to-end stages behind the command-line tool:
//! extract → translate → index → locate → eval.
//!
//! Each stage reads its inputs from the project config and the artifacts of
//! earlier stages under `output_dir`, and never writes into the source tree.

mod config;

use std::collections::HashSet;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{
    extension_set, filter_usable_reports, load_bug_reports, load_source_tree, write_bug_reports, BugReport,
    Corpus, CorpusError, Language,
};
use crate::diagnostic::Diagnostic;
use crate::eval::{evaluate, load_qrels, load_run, EvalError, EvalReport, Mode, Qrels};
use crate::extract::{detect_japanese, extract_spans, SpanKind};
use crate::index::{read_index, write_index, Index, IndexError};
use crate::rank::{write_run, Locator, RankError, Technique};
use crate::translate::{
    Glossary, GlossaryBackend, IdentityBackend, ServiceBackend, TranslateError, TranslationCache,
    TranslationStats, Translator, TranslatorBackend,
};

pub use config::{BackendKind, ProjectConfig, TranslatorConfig};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("{path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("config is missing required key `{0}`")]
    MissingKey(String),
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("missing artifact {artifact}; run `{stage}` first")]
    MissingArtifact { artifact: PathBuf, stage: String },
    #[error("unknown query ids: {}", .0.join(", "))]
    UnknownQueries(Vec<String>),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> PipelineError + '_ {
    move |source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn require(artifact: PathBuf, stage: &str) -> Result<PathBuf, PipelineError> {
    if artifact.exists() {
        Ok(artifact)
    } else {
        Err(PipelineError::MissingArtifact {
            artifact,
            stage: stage.to_string(),
        })
    }
}

fn create_file(path: &Path) -> Result<BufWriter<std::fs::File>, PipelineError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io_error(parent))?;
    }
    Ok(BufWriter::new(std::fs::File::create(path).map_err(io_error(path))?))
}

/// One extracted span as written to `spans.jsonl`.
#[derive(Debug, Clone, Serialize)]
pub struct SpanRecord {
    pub path: String,
    pub language: Language,
    pub byte_start: usize,
    pub byte_end: usize,
    pub kind: SpanKind,
    pub japanese: bool,
    pub text: String,
}

#[derive(Debug, Clone)]
pub struct ExtractSummary {
    pub files: usize,
    pub spans: usize,
    pub japanese_spans: usize,
    pub output: PathBuf,
    pub diagnostics: Vec<Diagnostic>,
}

/// Lex every source file and write its comment and string spans.
pub fn cmd_extract(config: &ProjectConfig) -> Result<ExtractSummary, PipelineError> {
    let corpus = load_source_tree(&config.source_root, &config.load_options())?.corpus;
    let lexed: Vec<(Vec<SpanRecord>, Vec<Diagnostic>)> = corpus
        .documents
        .par_iter()
        .map(|doc| {
            let ex = extract_spans(&doc.raw_text, doc.language);
            let records = ex
                .spans
                .into_iter()
                .map(|s| SpanRecord {
                    path: doc.path.clone(),
                    language: doc.language,
                    byte_start: s.byte_start,
                    byte_end: s.byte_end,
                    kind: s.kind,
                    japanese: detect_japanese(&s.text),
                    text: s.text,
                })
                .collect();
            let diags = ex
                .diagnostics
                .into_iter()
                .map(|d| Diagnostic::about(&doc.path, d.message))
                .collect();
            (records, diags)
        })
        .collect();

    let output = config.spans_path();
    let mut out = create_file(&output)?;
    let (mut spans, mut japanese_spans, mut diagnostics) = (0, 0, Vec::new());
    for (records, diags) in lexed {
        for r in &records {
            spans += 1;
            japanese_spans += usize::from(r.japanese);
            serde_json::to_writer(&mut out, r).expect("span record serializes");
            out.write_all(b"\n").map_err(io_error(&output))?;
        }
        diagnostics.extend(diags);
    }
    out.flush().map_err(io_error(&output))?;
    Ok(ExtractSummary {
        files: corpus.len(),
        spans,
        japanese_spans,
        output,
        diagnostics,
    })
}

/// Backend named by the translator settings.
pub fn build_backend(config: &TranslatorConfig) -> Result<Box<dyn TranslatorBackend>, PipelineError> {
    Ok(match config.backend {
        BackendKind::Identity => Box::new(IdentityBackend),
        BackendKind::Glossary => {
            let path = config
                .glossary
                .as_ref()
                .ok_or_else(|| PipelineError::MissingKey("translator.glossary".into()))?;
            Box::new(GlossaryBackend::new(Glossary::load(path)?))
        }
        BackendKind::Service => {
            let service = config
                .service
                .clone()
                .ok_or_else(|| PipelineError::MissingKey("translator.service".into()))?;
            Box::new(ServiceBackend::new(service.with_env_token())?)
        }
    })
}

#[derive(Debug, Clone)]
pub struct TranslateSummary {
    pub backend: String,
    pub files: usize,
    pub reports: usize,
    pub stats: TranslationStats,
    pub output_root: PathBuf,
    pub diagnostics: Vec<Diagnostic>,
}

fn manifest_path(config: &ProjectConfig) -> PathBuf {
    config.output_dir.join("translation.json")
}

/// Translate Japanese in source comments and strings, and in report
/// summaries and descriptions. Writes a translated copy of the tree under
/// `output_dir/translated` and the translated reports next to it.
pub fn cmd_translate(config: &ProjectConfig) -> Result<TranslateSummary, PipelineError> {
    std::fs::create_dir_all(&config.output_dir).map_err(io_error(&config.output_dir))?;
    let source_root = config
        .source_root
        .canonicalize()
        .map_err(|source| CorpusError::UnreadableRoot {
            path: config.source_root.clone(),
            source,
        })?;
    let output_dir = config.output_dir.canonicalize().map_err(io_error(&config.output_dir))?;
    if output_dir.starts_with(&source_root) || source_root.starts_with(&output_dir) {
        return Err(PipelineError::Invalid(
            "output_dir and source_root must not contain one another".into(),
        ));
    }

    let corpus = load_source_tree(&config.source_root, &config.load_options())?.corpus;
    let reports = load_bug_reports(&config.reports)?;

    let backend = build_backend(&config.translator)?;
    let cache = match &config.cache {
        Some(path) => TranslationCache::open(path)?,
        None => TranslationCache::in_memory(),
    };
    let translator = Translator::new(&*backend)
        .with_cache(&cache)
        .batch_size(config.translator.batch_size)
        .strict(config.translator.strict);
    let sources = translator.translate_corpus(&corpus)?;
    let translated_reports = translator.translate_reports(&reports)?;

    let root = config.translated_root();
    let manifest = manifest_path(config);
    if root.exists() {
        // Only replace a tree this command wrote before.
        if !manifest.exists() {
            return Err(PipelineError::Invalid(format!(
                "{} exists but was not written by translate; refusing to replace it",
                root.display()
            )));
        }
        std::fs::remove_dir_all(&root).map_err(io_error(&root))?;
    }
    for doc in &sources.value.documents {
        let path = root.join(&doc.path);
        let mut out = create_file(&path)?;
        out.write_all(doc.raw_text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(io_error(&path))?;
    }
    let reports_path = config.translated_reports_path();
    let mut out = create_file(&reports_path)?;
    write_bug_reports(&mut out, &translated_reports.value).map_err(io_error(&reports_path))?;

    let stats = sources.stats.merged(translated_reports.stats);
    let record = serde_json::json!({
        "backend": backend.name(),
        "files": sources.value.len(),
        "reports": translated_reports.value.len(),
        "texts": stats.texts,
        "cache_hits": stats.cache_hits,
        "backend_calls": stats.backend_calls,
        "failed": stats.failed,
    });
    let mut out = create_file(&manifest)?;
    serde_json::to_writer_pretty(&mut out, &record).expect("manifest serializes");
    out.write_all(b"\n").and_then(|_| out.flush()).map_err(io_error(&manifest))?;

    let mut diagnostics = sources.diagnostics;
    diagnostics.extend(translated_reports.diagnostics);
    Ok(TranslateSummary {
        backend: backend.name().to_string(),
        files: sources.value.len(),
        reports: translated_reports.value.len(),
        stats,
        output_root: root,
        diagnostics,
    })
}

#[derive(Debug, Clone)]
pub struct IndexSummary {
    pub documents: usize,
    pub terms: usize,
    pub output: PathBuf,
}

/// Index the translated tree, or the original sources when
/// `translated_sources` is false.
pub fn cmd_index(config: &ProjectConfig, translated_sources: bool) -> Result<IndexSummary, PipelineError> {
    let root = if translated_sources {
        require(manifest_path(config), "croloc translate")?;
        config.translated_root()
    } else {
        config.source_root.clone()
    };
    let corpus = load_source_tree(&root, &config.load_options())?.corpus;
    let index = Index::from_corpus(&corpus, config.tokenizer)?;
    let output = config.index_path(translated_sources);
    write_index(&index, &output)?;
    Ok(IndexSummary {
        documents: index.len(),
        terms: index.stats.len(),
        output,
    })
}

#[derive(Debug, Clone, Default)]
pub struct LocateOptions {
    /// Rank only these reports. Empty selects the default set.
    pub queries: Vec<String>,
    /// Rank against the index of translated sources.
    pub translated_sources: bool,
    /// With no explicit queries, rank every report rather than only the
    /// usable ones (functional, fixed, touching an indexed file).
    pub all_reports: bool,
    /// Run file; defaults to `output_dir/runs/<technique>.run`.
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct LocateSummary {
    pub technique: Technique,
    pub queries: usize,
    pub output: PathBuf,
    pub diagnostics: Vec<Diagnostic>,
}

fn index_stage(translated_sources: bool) -> &'static str {
    if translated_sources {
        "croloc index"
    } else {
        "croloc index --no-translate"
    }
}

/// Reports selected for ranking, plus a note for each skipped report.
fn select_queries(
    reports: &[BugReport],
    index: &Index,
    options: &LocateOptions,
) -> Result<(Vec<BugReport>, Vec<Diagnostic>), PipelineError> {
    if !options.queries.is_empty() {
        let unknown: Vec<String> = options
            .queries
            .iter()
            .filter(|q| !reports.iter().any(|r| &r.id == *q))
            .cloned()
            .collect();
        if !unknown.is_empty() {
            return Err(PipelineError::UnknownQueries(unknown));
        }
        let wanted: HashSet<&str> = options.queries.iter().map(String::as_str).collect();
        let picked = reports.iter().filter(|r| wanted.contains(r.id.as_str())).cloned().collect();
        return Ok((picked, Vec::new()));
    }
    if options.all_reports {
        return Ok((reports.to_vec(), Vec::new()));
    }
    let indexed = Corpus::from_sources(
        PathBuf::new(),
        index.paths.iter().map(|p| (p.clone(), Language::Generic, String::new())),
    )?;
    let extensions = extension_set(index.paths.iter().filter_map(|p| crate::corpus::extension_of(p)));
    let filtered = filter_usable_reports(reports, &indexed, &extensions);
    let notes = filtered
        .excluded
        .iter()
        .map(|(r, why)| Diagnostic::about(&r.id, format!("skipped: {why}")))
        .collect();
    Ok((filtered.usable, notes))
}

/// Rank files for bug reports and write a TREC run.
///
/// Reports always come from the translated report file; with
/// `translated_sources` off they are ranked against the untranslated
/// source index.
pub fn cmd_locate(config: &ProjectConfig, options: &LocateOptions) -> Result<LocateSummary, PipelineError> {
    let index_path = require(config.index_path(options.translated_sources), index_stage(options.translated_sources))?;
    let reports_path = require(config.translated_reports_path(), "croloc translate")?;
    let index = read_index(&index_path)?;
    let reports = load_bug_reports(&reports_path)?;
    let (queries, diagnostics) = select_queries(&reports, &index, options)?;

    let locator = Locator::new(&index, config.technique)
        .with_history(&reports)
        .alpha(config.alpha);
    let rankings = locator.locate_all(&queries)?;

    let output = options
        .output
        .clone()
        .unwrap_or_else(|| config.run_path(config.technique, options.translated_sources));
    let mut out = create_file(&output)?;
    write_run(&mut out, &rankings, &format!("croloc-{}", config.technique), config.top_k)
        .map_err(io_error(&output))?;
    Ok(LocateSummary {
        technique: config.technique,
        queries: rankings.len(),
        output,
        diagnostics,
    })
}

/// Oracles from the configured qrels file, or from report fixed files.
pub fn project_qrels(config: &ProjectConfig) -> Result<Qrels, PipelineError> {
    match &config.qrels {
        Some(path) => Ok(load_qrels(path)?),
        None => Ok(Qrels::from_reports(&load_bug_reports(&config.reports)?)),
    }
}

/// Score a run file against the project's oracles.
pub fn cmd_eval(config: &ProjectConfig, run: &Path, mode: Mode) -> Result<EvalReport, PipelineError> {
    let run = load_run(&require(run.to_path_buf(), "croloc locate")?)?;
    let qrels = project_qrels(config)?;
    Ok(evaluate(&run, &qrels, mode)?)
}
