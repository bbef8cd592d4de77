//! Lexer and translator behavior on the hand-checked lexing corpus.

mod support;

use std::collections::BTreeMap;

use croloc::corpus::{load_source_tree, Corpus, LoadOptions};
use croloc::extract::{code_outside_spans, extract_spans, japanese_segments, SpanKind};
use croloc::translate::{Glossary, GlossaryBackend, IdentityBackend, Translator};
use regex::Regex;
use serde::Deserialize;

#[derive(Deserialize)]
struct Expected {
    diagnostics: usize,
    spans: Vec<(String, String)>,
}

fn corpus() -> Corpus {
    load_source_tree(&support::fixtures().join("lexing"), &LoadOptions::default())
        .unwrap()
        .corpus
}

fn expected() -> BTreeMap<String, Expected> {
    let text = std::fs::read_to_string(support::fixtures().join("lexing/expected_spans.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn kind_name(kind: SpanKind) -> &'static str {
    match kind {
        SpanKind::LineComment => "line_comment",
        SpanKind::BlockComment => "block_comment",
        SpanKind::StringLiteral => "string_literal",
    }
}

#[test]
fn spans_match_the_reviewed_listing() {
    let corpus = corpus();
    let expected = expected();
    assert_eq!(corpus.paths().collect::<Vec<_>>(), expected.keys().collect::<Vec<_>>());
    for doc in &corpus.documents {
        let want = &expected[&doc.path];
        let got = extract_spans(&doc.raw_text, doc.language);
        let spans: Vec<(String, String)> = got
            .spans
            .iter()
            .map(|s| (kind_name(s.kind).to_string(), s.text.clone()))
            .collect();
        assert_eq!(spans, want.spans, "{}", doc.path);
        assert_eq!(got.diagnostics.len(), want.diagnostics, "{}", doc.path);
    }
}

#[test]
fn spans_are_ordered_slices_of_the_source() {
    for doc in &corpus().documents {
        let spans = extract_spans(&doc.raw_text, doc.language).spans;
        let mut cursor = 0;
        for s in &spans {
            assert!(cursor <= s.byte_start && s.byte_start < s.byte_end, "{}", doc.path);
            assert_eq!(s.text, &doc.raw_text[s.byte_start..s.byte_end], "{}", doc.path);
            cursor = s.byte_end;
        }
    }
}

#[test]
fn identity_translation_is_byte_identical() {
    let corpus = corpus();
    let out = Translator::new(&IdentityBackend).translate_corpus(&corpus).unwrap();
    for (a, b) in corpus.documents.iter().zip(&out.value.documents) {
        assert_eq!(a.raw_text.as_bytes(), b.raw_text.as_bytes(), "{}", a.path);
    }
}

/// Pattern matching `text` with each Japanese segment free to change.
fn segment_pattern(text: &str, language: croloc::corpus::Language) -> Regex {
    let mut pattern = String::from("(?s)^");
    let mut cursor = 0;
    for span in extract_spans(text, language).spans {
        for seg in japanese_segments(&span.text) {
            let start = span.byte_start + seg.start;
            pattern.push_str(&regex::escape(&text[cursor..start]));
            pattern.push_str(".*?");
            cursor = span.byte_start + seg.end;
        }
    }
    pattern.push_str(&regex::escape(&text[cursor..]));
    pattern.push('$');
    Regex::new(&pattern).unwrap()
}

#[test]
fn glossary_translation_only_touches_segments() {
    let corpus = corpus();
    let glossary = Glossary::load(&support::fixtures().join("lexing/glossary.tsv")).unwrap();
    let backend = GlossaryBackend::new(glossary);
    let out = Translator::new(&backend).translate_corpus(&corpus).unwrap();
    let mut changed = 0;
    for (a, b) in corpus.documents.iter().zip(&out.value.documents) {
        assert!(segment_pattern(&a.raw_text, a.language).is_match(&b.raw_text), "{}", a.path);
        let before = extract_spans(&a.raw_text, a.language);
        let after = extract_spans(&b.raw_text, b.language);
        let kinds = |e: &croloc::extract::Extraction| e.spans.iter().map(|s| s.kind).collect::<Vec<_>>();
        assert_eq!(kinds(&before), kinds(&after), "{}", a.path);
        assert_eq!(
            code_outside_spans(&a.raw_text, &before.spans),
            code_outside_spans(&b.raw_text, &after.spans),
            "{}",
            a.path
        );
        changed += usize::from(a.raw_text != b.raw_text);
    }
    assert!(changed >= 15, "only {changed} files changed");
}
