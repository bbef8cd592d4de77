//! Comment and string literal extraction, Japanese segment detection, and
//! byte-exact re-embedding of replacement text.

mod japanese;
mod lexer;

use serde::Serialize;

use crate::corpus::SourceDocument;

pub use japanese::{
    detect_japanese, japanese_segments, JapaneseDetector, Segment, DEFAULT_JAPANESE_RANGES,
};
pub use lexer::{extract_spans, Extraction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanKind {
    LineComment,
    BlockComment,
    StringLiteral,
}

/// The delimiter style around a span. Decides how replacement text must be
/// escaped so the surrounding code still lexes the same way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Comment,
    /// `"..."` with backslash escapes.
    Plain,
    /// C# `@"..."`.
    Verbatim,
    /// C# `$"..."`.
    Interpolated,
    /// C# `$@"..."` / `@$"..."`.
    VerbatimInterpolated,
    /// Java `"""` text block.
    TextBlock,
    /// C# `"""` raw string.
    Raw,
}

/// A comment or string literal body. `text` is exactly
/// `raw_text[byte_start..byte_end]`; delimiters are outside the range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Span {
    pub byte_start: usize,
    pub byte_end: usize,
    pub kind: SpanKind,
    #[serde(skip)]
    pub flavor: Flavor,
    pub text: String,
}

impl Span {
    /// Escape `replacement` for this span's delimiters.
    pub fn escape(&self, replacement: &str) -> String {
        match (self.kind, self.flavor) {
            (SpanKind::LineComment, _) => replacement.replace(['\r', '\n'], " "),
            (SpanKind::BlockComment, _) => replacement.replace("*/", "* /"),
            (_, Flavor::Plain) | (_, Flavor::Comment) => {
                escape_backslashed(replacement).replace(['\r', '\n'], " ")
            }
            (_, Flavor::TextBlock) => escape_backslashed(replacement),
            (_, Flavor::Verbatim) => replacement.replace('"', "\"\""),
            (_, Flavor::Interpolated) => escape_braces(&escape_backslashed(replacement))
                .replace(['\r', '\n'], " "),
            (_, Flavor::VerbatimInterpolated) => escape_braces(&replacement.replace('"', "\"\"")),
            (_, Flavor::Raw) => replacement.replace('"', "'"),
        }
    }
}

fn escape_backslashed(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn escape_braces(s: &str) -> String {
    s.replace('{', "{{").replace('}', "}}")
}

/// Replace one segment of one span.
#[derive(Debug, Clone)]
pub struct Replacement<'a> {
    pub span: &'a Span,
    pub segment: &'a Segment,
    pub new_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReembedError {
    #[error("replacement target {start}..{end} is outside the document or its span")]
    OutOfRange { start: usize, end: usize },
    #[error("replacement target {start}..{end} no longer holds {expected:?}")]
    StaleTarget {
        start: usize,
        end: usize,
        expected: String,
    },
    #[error("replacements at {first:?} and {second:?} overlap")]
    Overlap {
        first: (usize, usize),
        second: (usize, usize),
    },
}

/// Substitute each targeted segment with its new text; every other byte of
/// the document is copied unchanged.
///
/// `new_text` is inserted verbatim; callers translating text should pass it
/// through [`Span::escape`] first.
pub fn reembed(
    doc: &SourceDocument,
    replacements: &[Replacement<'_>],
) -> Result<SourceDocument, ReembedError> {
    let text = &doc.raw_text;
    let mut targets = Vec::with_capacity(replacements.len());
    for r in replacements {
        let start = r.span.byte_start + r.segment.start;
        let end = r.span.byte_start + r.segment.end;
        let in_span = r.segment.start <= r.segment.end && end <= r.span.byte_end;
        if !in_span
            || r.span.byte_end > text.len()
            || !text.is_char_boundary(start)
            || !text.is_char_boundary(end)
        {
            return Err(ReembedError::OutOfRange { start, end });
        }
        if text[start..end] != r.segment.text {
            return Err(ReembedError::StaleTarget {
                start,
                end,
                expected: r.segment.text.clone(),
            });
        }
        targets.push((start, end, r.new_text.as_str()));
    }
    targets.sort_by_key(|&(start, end, _)| (start, end));
    for w in targets.windows(2) {
        if w[1].0 < w[0].1 {
            return Err(ReembedError::Overlap {
                first: (w[0].0, w[0].1),
                second: (w[1].0, w[1].1),
            });
        }
    }

    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    for (start, end, new_text) in targets {
        out.push_str(&text[cursor..start]);
        out.push_str(new_text);
        cursor = end;
    }
    out.push_str(&text[cursor..]);
    Ok(doc.with_text(out))
}

/// Non-span bytes of `text`, concatenated. Reembedding never changes this.
pub fn code_outside_spans(text: &str, spans: &[Span]) -> String {
    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    for span in spans {
        out.push_str(&text[cursor..span.byte_start]);
        cursor = span.byte_end;
    }
    out.push_str(&text[cursor..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Language;

    fn doc(text: &str, language: Language) -> SourceDocument {
        SourceDocument {
            doc_id: 0,
            path: "A.java".into(),
            language,
            raw_text: text.into(),
        }
    }

    fn replace_all(d: &SourceDocument, f: impl Fn(&str) -> String) -> Result<SourceDocument, ReembedError> {
        let spans = extract_spans(&d.raw_text, d.language).spans;
        let segs: Vec<Vec<Segment>> = spans.iter().map(|s| japanese_segments(&s.text)).collect();
        let mut reps = Vec::new();
        for (span, segs) in spans.iter().zip(&segs) {
            for seg in segs {
                reps.push(Replacement {
                    span,
                    segment: seg,
                    new_text: span.escape(&f(&seg.text)),
                });
            }
        }
        reembed(d, &reps)
    }

    #[test]
    fn substitutes_in_place() {
        let d = doc("// カウンタ", Language::Java);
        let out = replace_all(&d, |_| "counter".into()).unwrap();
        assert_eq!(out.raw_text, "// counter");
    }

    #[test]
    fn empty_and_identity_replacements_are_byte_identical() {
        let src = "class A { // 設定\n String s = \"値: {0}\"; /* 初期化 */ }";
        let d = doc(src, Language::Java);
        assert_eq!(reembed(&d, &[]).unwrap().raw_text, src);
        assert_eq!(replace_all(&d, |s| s.to_string()).unwrap().raw_text, src);
    }

    #[test]
    fn mixed_comment_keeps_ascii_words() {
        let d = doc("x(); // TODO: 修正する before release\n", Language::Java);
        let out = replace_all(&d, |_| "fix".into()).unwrap();
        assert_eq!(out.raw_text, "x(); // TODO: fix before release\n");
    }

    #[test]
    fn translations_are_escaped_for_their_delimiters() {
        let d = doc("s = \"名前\"; /* 説明 */ // 行\n", Language::Java);
        let out = replace_all(&d, |_| "a \"q\" */ \\ b\nc".into()).unwrap();
        assert_eq!(
            out.raw_text,
            "s = \"a \\\"q\\\" */ \\\\ b c\"; /* a \"q\" * / \\ b\nc */ // a \"q\" */ \\ b c\n"
        );
        // the code skeleton survives
        let before = extract_spans(&d.raw_text, d.language).spans;
        let after = extract_spans(&out.raw_text, out.language).spans;
        assert_eq!(before.len(), after.len());
        assert_eq!(
            code_outside_spans(&d.raw_text, &before),
            code_outside_spans(&out.raw_text, &after)
        );

        let d = doc("var m = $@\"件名 {x}\";", Language::CSharp);
        let out = replace_all(&d, |_| "say \"{hi}\"".into()).unwrap();
        assert_eq!(out.raw_text, "var m = $@\"say \"\"{{hi}}\"\" {x}\";");
    }

    #[test]
    fn rejects_overlap_and_out_of_range() {
        let d = doc("// カウンタ", Language::Java);
        let spans = extract_spans(&d.raw_text, d.language).spans;
        let seg = japanese_segments(&spans[0].text).remove(0);
        let rep = Replacement {
            span: &spans[0],
            segment: &seg,
            new_text: "x".into(),
        };
        let err = reembed(&d, &[rep.clone(), rep.clone()]).unwrap_err();
        assert!(matches!(err, ReembedError::Overlap { .. }));

        let far = Segment {
            start: 0,
            end: 100,
            text: "カウンタ".into(),
        };
        let bad = Replacement {
            span: &spans[0],
            segment: &far,
            new_text: "x".into(),
        };
        assert!(matches!(reembed(&d, &[bad]).unwrap_err(), ReembedError::OutOfRange { .. }));

        let stale = Segment {
            start: 0,
            end: 3,
            text: "カ".into(),
        };
        let other = doc("// ウンタ", Language::Java);
        let spans2 = extract_spans(&other.raw_text, other.language).spans;
        let bad = Replacement {
            span: &spans2[0],
            segment: &stale,
            new_text: "x".into(),
        };
        assert!(matches!(reembed(&other, &[bad]).unwrap_err(), ReembedError::StaleTarget { .. }));
    }
}
