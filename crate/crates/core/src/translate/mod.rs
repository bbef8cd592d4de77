//! Japanese → English translation of source segments and bug reports
//! through a single pluggable backend, with a persistent cache.

mod cache;
mod glossary;
mod service;

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;

use rayon::prelude::*;

use crate::corpus::{BugReport, Corpus, SourceDocument};
use crate::diagnostic::Diagnostic;
use crate::extract::{extract_spans, reembed, JapaneseDetector, ReembedError, Replacement, Segment, Span};

pub use cache::{source_hash, CacheEntry, TranslationCache};
pub use glossary::{glossary_translate, Glossary, GlossaryBackend};
pub use service::{service_translate_batch, ServiceBackend, ServiceConfig, TOKEN_ENV};

pub const DEFAULT_BATCH_SIZE: usize = 32;

#[derive(Debug, thiserror::Error)]
pub enum TranslateError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("glossary line {line}: {message}")]
    Glossary { line: usize, message: String },
    #[error("{path}:{line}: corrupt cache entry: {message}")]
    Cache {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("translation service returned HTTP {status}: {body}")]
    Status { status: u16, body: String },
    #[error("translation service unreachable: {0}")]
    Transport(String),
    #[error("translation protocol error: {0}")]
    Protocol(String),
    #[error("translator configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Reembed(#[from] ReembedError),
}

/// A machine translator. Output has the input's length and order, and `""`
/// translates to `""`.
pub trait TranslatorBackend: Send + Sync {
    /// Cache namespace; two backends with the same name must agree.
    fn name(&self) -> &str;

    fn translate_batch(&self, texts: &[String]) -> Result<Vec<String>, TranslateError>;

    /// Whether several batches may be in flight at once.
    fn concurrent(&self) -> bool {
        true
    }
}

impl<T: TranslatorBackend + ?Sized> TranslatorBackend for &T {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn translate_batch(&self, texts: &[String]) -> Result<Vec<String>, TranslateError> {
        (**self).translate_batch(texts)
    }
    fn concurrent(&self) -> bool {
        (**self).concurrent()
    }
}

impl<T: TranslatorBackend + ?Sized> TranslatorBackend for Box<T> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn translate_batch(&self, texts: &[String]) -> Result<Vec<String>, TranslateError> {
        (**self).translate_batch(texts)
    }
    fn concurrent(&self) -> bool {
        (**self).concurrent()
    }
}

/// Returns its input.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityBackend;

impl TranslatorBackend for IdentityBackend {
    fn name(&self) -> &str {
        "identity"
    }

    fn translate_batch(&self, texts: &[String]) -> Result<Vec<String>, TranslateError> {
        Ok(texts.to_vec())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TranslationStats {
    /// Distinct non-empty texts needing translation.
    pub texts: usize,
    pub cache_hits: usize,
    /// Batches sent to the backend.
    pub backend_calls: usize,
    /// Texts left untranslated because their batch failed.
    pub failed: usize,
}

impl TranslationStats {
    fn absorb(&mut self, other: TranslationStats) {
        self.texts += other.texts;
        self.cache_hits += other.cache_hits;
        self.backend_calls += other.backend_calls;
        self.failed += other.failed;
    }
}

#[derive(Debug, Clone)]
pub struct Translated<T> {
    pub value: T,
    pub stats: TranslationStats,
    pub diagnostics: Vec<Diagnostic>,
}

/// Translation lookups for a set of texts.
struct Resolved {
    translations: HashMap<String, String>,
    stats: TranslationStats,
    diagnostics: Vec<Diagnostic>,
}

/// Drives a backend: deduplicates texts, consults the cache, batches misses.
pub struct Translator<'a> {
    backend: &'a dyn TranslatorBackend,
    cache: Option<&'a TranslationCache>,
    batch_size: usize,
    strict: bool,
    detector: JapaneseDetector,
}

impl<'a> Translator<'a> {
    pub fn new(backend: &'a dyn TranslatorBackend) -> Self {
        Self {
            backend,
            cache: None,
            batch_size: DEFAULT_BATCH_SIZE,
            strict: false,
            detector: JapaneseDetector::default(),
        }
    }

    pub fn with_cache(mut self, cache: &'a TranslationCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn batch_size(mut self, size: usize) -> Self {
        self.batch_size = size.max(1);
        self
    }

    /// Fail on the first backend error instead of leaving text untranslated.
    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn detector(mut self, detector: JapaneseDetector) -> Self {
        self.detector = detector;
        self
    }

    fn resolve(&self, texts: BTreeSet<&str>) -> Result<Resolved, TranslateError> {
        let name = self.backend.name();
        let mut resolved = Resolved {
            translations: HashMap::new(),
            stats: TranslationStats::default(),
            diagnostics: Vec::new(),
        };
        let mut misses = Vec::new();
        for text in texts.into_iter().filter(|t| !t.is_empty()) {
            resolved.stats.texts += 1;
            match self.cache.and_then(|c| c.get(name, text)) {
                Some(hit) => {
                    resolved.stats.cache_hits += 1;
                    resolved.translations.insert(text.to_string(), hit);
                }
                None => misses.push(text.to_string()),
            }
        }

        let chunks: Vec<&[String]> = misses.chunks(self.batch_size).collect();
        let call = |chunk: &&[String]| {
            let out = self.backend.translate_batch(chunk)?;
            if out.len() != chunk.len() {
                return Err(TranslateError::Protocol(format!(
                    "backend {name} returned {} translations for {} texts",
                    out.len(),
                    chunk.len()
                )));
            }
            Ok(out)
        };
        let results: Vec<Result<Vec<String>, TranslateError>> = if self.backend.concurrent() {
            chunks.par_iter().map(call).collect()
        } else {
            chunks.iter().map(call).collect()
        };

        for (chunk, result) in chunks.iter().zip(results) {
            resolved.stats.backend_calls += 1;
            match result {
                Ok(out) => {
                    if let Some(cache) = self.cache {
                        cache.insert_all(name, chunk.iter().map(String::as_str).zip(out.iter().map(String::as_str)))?;
                    }
                    resolved.translations.extend(chunk.iter().cloned().zip(out));
                }
                Err(e) if self.strict => return Err(e),
                Err(e) => {
                    resolved.stats.failed += chunk.len();
                    resolved.diagnostics.push(Diagnostic::new(format!(
                        "{} text(s) left untranslated: {e}",
                        chunk.len()
                    )));
                }
            }
        }
        Ok(resolved)
    }

    /// Japanese segments of every span in `doc`.
    fn segments_of(&self, doc: &SourceDocument) -> (Vec<Span>, Vec<Vec<Segment>>, Vec<Diagnostic>) {
        let extraction = extract_spans(&doc.raw_text, doc.language);
        let segments = extraction
            .spans
            .iter()
            .map(|s| self.detector.segments(&s.text))
            .collect();
        let diagnostics = extraction
            .diagnostics
            .into_iter()
            .map(|d| Diagnostic::about(&doc.path, d.message))
            .collect();
        (extraction.spans, segments, diagnostics)
    }

    fn apply(
        doc: &SourceDocument,
        spans: &[Span],
        segments: &[Vec<Segment>],
        translations: &HashMap<String, String>,
    ) -> Result<SourceDocument, TranslateError> {
        let mut replacements = Vec::new();
        for (span, segs) in spans.iter().zip(segments) {
            for seg in segs {
                match translations.get(&seg.text) {
                    Some(t) if *t != seg.text => replacements.push(Replacement {
                        span,
                        segment: seg,
                        new_text: span.escape(t),
                    }),
                    _ => {}
                }
            }
        }
        Ok(reembed(doc, &replacements)?)
    }

    /// Translate the Japanese segments of one source file in place.
    pub fn translate_document(&self, doc: &SourceDocument) -> Result<Translated<SourceDocument>, TranslateError> {
        let (spans, segments, mut diagnostics) = self.segments_of(doc);
        let texts = segments.iter().flatten().map(|s| s.text.as_str()).collect();
        let resolved = self.resolve(texts)?;
        diagnostics.extend(resolved.diagnostics.into_iter().map(|d| Diagnostic::about(&doc.path, d.message)));
        let value = Self::apply(doc, &spans, &segments, &resolved.translations)?;
        Ok(Translated {
            value,
            stats: resolved.stats,
            diagnostics,
        })
    }

    /// Translate every document; all texts go through one deduplicated pass.
    pub fn translate_corpus(&self, corpus: &Corpus) -> Result<Translated<Corpus>, TranslateError> {
        let lexed: Vec<_> = corpus.documents.par_iter().map(|d| self.segments_of(d)).collect();
        let texts = lexed
            .iter()
            .flat_map(|(_, segs, _)| segs.iter().flatten().map(|s| s.text.as_str()))
            .collect();
        let resolved = self.resolve(texts)?;
        let documents = corpus
            .documents
            .par_iter()
            .zip(&lexed)
            .map(|(doc, (spans, segs, _))| Self::apply(doc, spans, segs, &resolved.translations))
            .collect::<Result<Vec<_>, _>>()?;
        let mut diagnostics: Vec<Diagnostic> = lexed.into_iter().flat_map(|(_, _, d)| d).collect();
        diagnostics.extend(resolved.diagnostics);
        Ok(Translated {
            value: Corpus {
                root: corpus.root.clone(),
                documents,
            },
            stats: resolved.stats,
            diagnostics,
        })
    }

    /// Translate summary and description, each as a whole, when they contain Japanese.
    pub fn translate_report(&self, report: &BugReport) -> Result<Translated<BugReport>, TranslateError> {
        let mut out = self.translate_reports(std::slice::from_ref(report))?;
        Ok(Translated {
            value: out.value.remove(0),
            stats: out.stats,
            diagnostics: out.diagnostics,
        })
    }

    pub fn translate_reports(&self, reports: &[BugReport]) -> Result<Translated<Vec<BugReport>>, TranslateError> {
        let texts = reports
            .iter()
            .flat_map(|r| [r.summary.as_str(), r.description.as_str()])
            .filter(|t| self.detector.detect(t))
            .collect();
        let resolved = self.resolve(texts)?;
        let pick = |text: &str| {
            if self.detector.detect(text) {
                resolved.translations.get(text).cloned().unwrap_or_else(|| text.to_string())
            } else {
                text.to_string()
            }
        };
        let value = reports
            .iter()
            .map(|r| BugReport {
                summary: pick(&r.summary),
                description: pick(&r.description),
                ..r.clone()
            })
            .collect();
        Ok(Translated {
            value,
            stats: resolved.stats,
            diagnostics: resolved.diagnostics,
        })
    }
}

/// Translate one document with a fresh [`Translator`].
pub fn translate_document(
    doc: &SourceDocument,
    backend: &dyn TranslatorBackend,
    cache: Option<&TranslationCache>,
) -> Result<Translated<SourceDocument>, TranslateError> {
    let mut t = Translator::new(backend);
    if let Some(c) = cache {
        t = t.with_cache(c);
    }
    t.translate_document(doc)
}

/// Translate one report with a fresh [`Translator`].
pub fn translate_report(
    report: &BugReport,
    backend: &dyn TranslatorBackend,
    cache: Option<&TranslationCache>,
) -> Result<Translated<BugReport>, TranslateError> {
    let mut t = Translator::new(backend);
    if let Some(c) = cache {
        t = t.with_cache(c);
    }
    t.translate_report(report)
}

impl TranslationStats {
    pub fn merged(mut self, other: TranslationStats) -> Self {
        self.absorb(other);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{parse_bug_reports, Language};
    use std::sync::atomic::{AtomicUsize, Ordering};

    /// Glossary backend that counts calls and texts.
    struct Counting {
        inner: GlossaryBackend,
        calls: AtomicUsize,
        texts: AtomicUsize,
    }

    impl Counting {
        fn new(pairs: &[(&str, &str)]) -> Self {
            let mut g = Glossary::new();
            for (k, v) in pairs {
                g.insert(*k, *v);
            }
            Self {
                inner: GlossaryBackend::new(g),
                calls: AtomicUsize::new(0),
                texts: AtomicUsize::new(0),
            }
        }
        fn calls(&self) -> usize {
            self.calls.load(Ordering::SeqCst)
        }
    }

    impl TranslatorBackend for Counting {
        fn name(&self) -> &str {
            "counting"
        }
        fn translate_batch(&self, texts: &[String]) -> Result<Vec<String>, TranslateError> {
            self.calls.fetch_add(1, Ordering::SeqCst);
            self.texts.fetch_add(texts.len(), Ordering::SeqCst);
            self.inner.translate_batch(texts)
        }
    }

    struct Failing;
    impl TranslatorBackend for Failing {
        fn name(&self) -> &str {
            "failing"
        }
        fn translate_batch(&self, _: &[String]) -> Result<Vec<String>, TranslateError> {
            Err(TranslateError::Status {
                status: 503,
                body: "down".into(),
            })
        }
    }

    struct Short;
    impl TranslatorBackend for Short {
        fn name(&self) -> &str {
            "short"
        }
        fn translate_batch(&self, texts: &[String]) -> Result<Vec<String>, TranslateError> {
            Ok(texts.iter().skip(1).cloned().collect())
        }
    }

    fn doc(text: &str) -> SourceDocument {
        SourceDocument {
            doc_id: 0,
            path: "src/A.java".into(),
            language: Language::Java,
            raw_text: text.into(),
        }
    }

    fn report(summary: &str, description: &str) -> BugReport {
        let line = serde_json::json!({
            "id": "B1", "summary": summary, "description": description,
            "reported_at": "2021-04-01T00:00:00Z", "fixed_files": ["src/A.java"]
        });
        parse_bug_reports(line.to_string().as_bytes(), "t").unwrap().remove(0)
    }

    #[test]
    fn glossary_translation_of_a_comment() {
        let backend = Counting::new(&[("カウンタ", "counter")]);
        let out = Translator::new(&backend)
            .translate_document(&doc("int c; // カウンタ\nint d;"))
            .unwrap();
        assert_eq!(out.value.raw_text, "int c; // counter\nint d;");
        assert_eq!(backend.calls(), 1);
    }

    #[test]
    fn english_file_makes_no_calls() {
        let backend = Counting::new(&[]);
        let src = "class A { // plain\n String s = \"text\"; }";
        let out = Translator::new(&backend).translate_document(&doc(src)).unwrap();
        assert_eq!(out.value.raw_text, src);
        assert_eq!(backend.calls(), 0);
        assert_eq!(out.stats.texts, 0);
    }

    #[test]
    fn warm_cache_skips_backend() {
        let backend = Counting::new(&[("設定", "settings")]);
        let cache = TranslationCache::in_memory();
        let t = Translator::new(&backend).with_cache(&cache);
        let d = doc("// 設定\nString s = \"設定\"; /* 初期 */");
        let first = t.translate_document(&d).unwrap();
        assert_eq!(backend.calls(), 1);
        let second = t.translate_document(&d).unwrap();
        assert_eq!(backend.calls(), 1);
        assert_eq!(first.value, second.value);
        assert_eq!(second.stats.cache_hits, 2);
        assert_eq!(second.stats.backend_calls, 0);
    }

    #[test]
    fn texts_are_deduplicated_and_batched() {
        let backend = Counting::new(&[]);
        let src: String = (0..70u32)
            .map(|i| format!("// 項目{}\n// 項目一\n", char::from_u32(0x4E00 + i).unwrap()))
            .collect();
        let out = Translator::new(&backend).batch_size(32).translate_document(&doc(&src)).unwrap();
        assert_eq!(out.stats.texts, 70); // 項目一 is also 0x4E00 + 0
        assert_eq!(backend.calls(), 3);
        assert_eq!(backend.texts.load(Ordering::SeqCst), 70);
    }

    #[test]
    fn failures_leave_text_untranslated_unless_strict() {
        let d = doc("// 失敗\n");
        let out = Translator::new(&Failing).translate_document(&d).unwrap();
        assert_eq!(out.value.raw_text, d.raw_text);
        assert_eq!(out.stats.failed, 1);
        assert_eq!(out.diagnostics.len(), 1);
        assert!(out.diagnostics[0].to_string().starts_with("src/A.java: "));

        let err = Translator::new(&Failing).strict(true).translate_document(&d).unwrap_err();
        assert!(matches!(err, TranslateError::Status { status: 503, .. }));
    }

    #[test]
    fn length_contract_is_enforced() {
        let err = Translator::new(&Short)
            .strict(true)
            .translate_document(&doc("// 一\n// 二"))
            .unwrap_err();
        assert!(matches!(err, TranslateError::Protocol(_)));
    }

    #[test]
    fn reports_translate_whole_fields() {
        let backend = Counting::new(&[("バグ", "bug")]);
        let t = Translator::new(&backend);
        let out = t.translate_report(&report("バグ", "")).unwrap();
        assert_eq!(out.value.summary, "bug");

        let r = report("Crash on save", "Stack trace attached");
        let out = t.translate_report(&r).unwrap();
        assert_eq!(out.value, r);
        assert_eq!(backend.calls(), 1);

        let r = report("保存時にバグ", "Steps: open, save");
        let out = t.translate_report(&r).unwrap();
        assert_eq!(out.value.summary, "保存時にbug");
        assert_eq!(out.value.description, "Steps: open, save");
        assert_eq!(out.value.id, r.id);
        assert_eq!(out.value.fixed_files, r.fixed_files);
        assert_eq!(out.value.reported_at, r.reported_at);
    }

    #[test]
    fn identity_backend_preserves_bytes() {
        let src = "/* 概要 */ class A { String s = @\"パス\\ファイル\"; } // 終わり";
        let out = Translator::new(&IdentityBackend).translate_document(&doc(src)).unwrap();
        assert_eq!(out.value.raw_text, src);
    }
}
