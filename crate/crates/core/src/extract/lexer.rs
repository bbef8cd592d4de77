//! Hand-written scanners for comments and string literals.
//!
//! Only three token classes matter, so the scanner walks bytes and skips
//! everything else. All delimiters are ASCII, which keeps every offset on a
//! character boundary.

use crate::corpus::Language;
use crate::diagnostic::Diagnostic;

use super::{Flavor, Span, SpanKind};

/// Spans found in one text, plus diagnostics for unterminated constructs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Extraction {
    pub spans: Vec<Span>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Lex `text` according to `language` and return its comment and string spans.
pub fn extract_spans(text: &str, language: Language) -> Extraction {
    let mut scanner = Scanner {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
        language,
        out: Extraction::default(),
    };
    scanner.scan_code(false);
    scanner.out
}

struct Scanner<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    language: Language,
    out: Extraction,
}

impl Scanner<'_> {
    fn peek(&self, offset: usize) -> Option<u8> {
        self.bytes.get(self.pos + offset).copied()
    }

    fn starts_with(&self, pat: &[u8]) -> bool {
        self.bytes[self.pos..].starts_with(pat)
    }

    fn push(&mut self, start: usize, end: usize, kind: SpanKind, flavor: Flavor) {
        if start < end {
            self.out.spans.push(Span {
                byte_start: start,
                byte_end: end,
                kind,
                flavor,
                text: self.src[start..end].to_string(),
            });
        }
    }

    fn diag(&mut self, at: usize, what: &str) {
        let line = self.src[..at].matches('\n').count() + 1;
        self.out
            .diagnostics
            .push(Diagnostic::new(format!("line {line}: unterminated {what}; span runs to end of file")));
    }

    fn at_line_start(&self) -> bool {
        self.src[..self.pos]
            .bytes()
            .rev()
            .take_while(|&b| b != b'\n')
            .all(|b| b == b' ' || b == b'\t')
    }

    /// Scan code until end of input, or, inside an interpolation hole, until
    /// the `}` that closes it. Returns true if the closing brace was found.
    fn scan_code(&mut self, in_hole: bool) -> bool {
        let mut depth = 0usize;
        let mut parens = 0usize;
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            match b {
                b'(' | b'[' if in_hole => {
                    parens += 1;
                    self.pos += 1;
                }
                b')' | b']' if in_hole => {
                    parens = parens.saturating_sub(1);
                    self.pos += 1;
                }
                b':' if in_hole && self.peek(1) == Some(b':') => self.pos += 2,
                b':' if in_hole && depth == 0 && parens == 0 => {
                    // Format specifier: opaque up to the closing brace.
                    match self.bytes[self.pos..].iter().position(|&c| c == b'}') {
                        Some(i) => {
                            self.pos += i;
                            return true;
                        }
                        None => {
                            self.pos = self.bytes.len();
                            return false;
                        }
                    }
                }
                b'/' if self.peek(1) == Some(b'/') => self.line_comment(),
                b'/' if self.peek(1) == Some(b'*') => self.block_comment(),
                b'"' => self.string_at_quote(),
                b'\'' if self.language != Language::Generic => self.char_literal(),
                b'@' | b'$' if self.language == Language::CSharp && self.csharp_prefixed_string() => {}
                b'#' if self.language == Language::CSharp && self.at_line_start() => self.directive(),
                b'{' if in_hole => {
                    depth += 1;
                    self.pos += 1;
                }
                b'}' if in_hole => {
                    if depth == 0 {
                        return true;
                    }
                    depth -= 1;
                    self.pos += 1;
                }
                _ => self.pos += 1,
            }
        }
        false
    }

    fn line_comment(&mut self) {
        let mut start = self.pos + 2;
        if self.bytes.get(start) == Some(&b' ') {
            start += 1;
        }
        let mut end = self.bytes[self.pos..]
            .iter()
            .position(|&b| b == b'\n')
            .map_or(self.bytes.len(), |i| self.pos + i);
        let next = end;
        if end > start && self.bytes[end - 1] == b'\r' {
            end -= 1;
        }
        self.push(start, end.max(start), SpanKind::LineComment, Flavor::Comment);
        self.pos = next;
    }

    fn block_comment(&mut self) {
        let open = self.pos;
        let start = self.pos + 2;
        match find(&self.bytes[start..], b"*/") {
            Some(i) => {
                self.push(start, start + i, SpanKind::BlockComment, Flavor::Comment);
                self.pos = start + i + 2;
            }
            None => {
                self.diag(open, "block comment");
                self.push(start, self.bytes.len(), SpanKind::BlockComment, Flavor::Comment);
                self.pos = self.bytes.len();
            }
        }
    }

    /// `#region`, `#if` and friends: skip to end of line, stopping early at a comment.
    fn directive(&mut self) {
        while self.pos < self.bytes.len() {
            if self.bytes[self.pos] == b'\n' || self.starts_with(b"//") || self.starts_with(b"/*") {
                return;
            }
            self.pos += 1;
        }
    }

    fn char_literal(&mut self) {
        let mut i = self.pos + 1;
        if self.bytes.get(i) == Some(&b'\\') {
            i += 2;
        }
        while i < self.bytes.len() {
            match self.bytes[i] {
                b'\'' => {
                    self.pos = i + 1;
                    return;
                }
                b'\n' => break,
                _ => i += 1,
            }
        }
        // Not a char literal after all; treat the quote as code.
        self.pos += 1;
    }

    fn quote_run(&self, at: usize) -> usize {
        self.bytes[at..].iter().take_while(|&&b| b == b'"').count()
    }

    /// At a bare `"`.
    fn string_at_quote(&mut self) {
        let quotes = self.quote_run(self.pos);
        match self.language {
            Language::Java if quotes >= 3 => self.java_text_block(),
            Language::CSharp if quotes >= 3 => self.csharp_raw(self.pos, quotes),
            _ => self.quoted(self.pos, Flavor::Plain),
        }
    }

    /// C# `@"…"`, `$"…"`, `$@"…"`, `@$"…"`, `$"""…"""`. Returns false if the
    /// prefix does not introduce a string.
    fn csharp_prefixed_string(&mut self) -> bool {
        let start = self.pos;
        let (prefix_len, verbatim, interpolated) = match (self.peek(0), self.peek(1), self.peek(2)) {
            (Some(b'@'), Some(b'"'), _) => (1, true, false),
            (Some(b'$'), Some(b'"'), _) => (1, false, true),
            (Some(b'$'), Some(b'@'), Some(b'"')) | (Some(b'@'), Some(b'$'), Some(b'"')) => (2, true, true),
            _ => return false,
        };
        let quote = start + prefix_len;
        if interpolated && !verbatim {
            let quotes = self.quote_run(quote);
            if quotes >= 3 {
                // Raw interpolated strings are taken whole; holes are not separated.
                self.csharp_raw(quote, quotes);
                return true;
            }
        }
        let flavor = match (verbatim, interpolated) {
            (true, true) => Flavor::VerbatimInterpolated,
            (true, false) => Flavor::Verbatim,
            (false, true) => Flavor::Interpolated,
            (false, false) => unreachable!(),
        };
        self.quoted(quote, flavor);
        true
    }

    /// A `"`-delimited literal whose opening quote is at `quote`.
    fn quoted(&mut self, quote: usize, flavor: Flavor) {
        let verbatim = matches!(flavor, Flavor::Verbatim | Flavor::VerbatimInterpolated);
        let interpolated = matches!(flavor, Flavor::Interpolated | Flavor::VerbatimInterpolated);
        let mut frag_start = quote + 1;
        let mut i = quote + 1;
        while i < self.bytes.len() {
            match self.bytes[i] {
                b'\\' if !verbatim => i += 2,
                b'"' if verbatim && self.bytes.get(i + 1) == Some(&b'"') => i += 2,
                b'"' => {
                    self.push(frag_start, i, SpanKind::StringLiteral, flavor);
                    self.pos = i + 1;
                    return;
                }
                b'{' | b'}' if interpolated && self.bytes.get(i + 1) == Some(&self.bytes[i]) => i += 2,
                b'{' if interpolated => {
                    self.push(frag_start, i, SpanKind::StringLiteral, flavor);
                    self.pos = i + 1;
                    if !self.scan_code(true) {
                        self.diag(i, "interpolation hole");
                        return;
                    }
                    // pos is at the closing brace
                    i = self.pos + 1;
                    frag_start = i;
                }
                _ => i += 1,
            }
        }
        self.diag(quote, "string literal");
        self.push(frag_start, self.bytes.len(), SpanKind::StringLiteral, flavor);
        self.pos = self.bytes.len();
    }

    /// Java `"""` text block; backslash escapes apply.
    fn java_text_block(&mut self) {
        let open = self.pos;
        let start = self.pos + 3;
        let mut i = start;
        while i < self.bytes.len() {
            match self.bytes[i] {
                b'\\' => i += 2,
                b'"' if self.bytes[i..].starts_with(b"\"\"\"") => {
                    self.push(start, i, SpanKind::StringLiteral, Flavor::TextBlock);
                    self.pos = i + 3;
                    return;
                }
                _ => i += 1,
            }
        }
        self.diag(open, "text block");
        self.push(start, self.bytes.len(), SpanKind::StringLiteral, Flavor::TextBlock);
        self.pos = self.bytes.len();
    }

    /// C# raw string: `n >= 3` quotes open it, the same number close it.
    fn csharp_raw(&mut self, quote: usize, n: usize) {
        let start = quote + n;
        let mut i = start;
        while i < self.bytes.len() {
            if self.bytes[i] == b'"' {
                let run = self.quote_run(i);
                if run >= n {
                    // Extra quotes belong to the content.
                    let end = i + run - n;
                    self.push(start, end, SpanKind::StringLiteral, Flavor::Raw);
                    self.pos = i + run;
                    return;
                }
                i += run;
            } else {
                i += 1;
            }
        }
        self.diag(quote, "raw string literal");
        self.push(start, self.bytes.len(), SpanKind::StringLiteral, Flavor::Raw);
        self.pos = self.bytes.len();
    }
}

fn find(haystack: &[u8], needle: &[u8]) -> Option<usize> {
    haystack.windows(needle.len()).position(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spans(text: &str, lang: Language) -> Vec<(SpanKind, String)> {
        extract_spans(text, lang)
            .spans
            .into_iter()
            .map(|s| (s.kind, s.text))
            .collect()
    }

    fn texts(text: &str, lang: Language) -> Vec<String> {
        spans(text, lang).into_iter().map(|(_, t)| t).collect()
    }

    #[test]
    fn line_comment_trims_one_space() {
        let got = spans("int x; // カウンタ", Language::Java);
        assert_eq!(got, [(SpanKind::LineComment, "カウンタ".to_string())]);
        assert_eq!(texts("x; //  two\r\ny;", Language::Java), [" two"]);
        assert!(texts("x; //\ny;", Language::Java).is_empty());
    }

    #[test]
    fn escaped_quote_does_not_split_string() {
        let got = spans(r#"String s = "a\"b";"#, Language::Java);
        assert_eq!(got, [(SpanKind::StringLiteral, r#"a\"b"#.to_string())]);
        assert_eq!(texts(r#"s = "a\\"; t = "c";"#, Language::Java), [r"a\\", "c"]);
    }

    #[test]
    fn block_comments_and_strings_in_order() {
        let src = "/* head */ class A { String s = \"x // not a comment\"; /* 本体 */ }";
        let got = spans(src, Language::Java);
        assert_eq!(
            got,
            [
                (SpanKind::BlockComment, " head ".to_string()),
                (SpanKind::StringLiteral, "x // not a comment".to_string()),
                (SpanKind::BlockComment, " 本体 ".to_string()),
            ]
        );
        assert_eq!(texts("s = \"/* no */\";", Language::Java), ["/* no */"]);
    }

    #[test]
    fn char_literals_are_skipped() {
        assert_eq!(texts("c = '\"'; s = \"ok\";", Language::Java), ["ok"]);
        assert_eq!(texts("c = '\\''; s = \"ok\";", Language::CSharp), ["ok"]);
        // generic has no char literals, so the quote is just code
        assert_eq!(texts("c = '\"x\"';", Language::Generic), ["x"]);
    }

    #[test]
    fn csharp_verbatim_strings() {
        let src = r#"var p = @"C:\temp\ファイル"; var q = @"say ""hi""";"#;
        assert_eq!(texts(src, Language::CSharp), [r"C:\temp\ファイル", r#"say ""hi"""#]);
        // In Java '@' is an annotation marker, not a string prefix.
        assert_eq!(texts(r#"@Deprecated String s = "x";"#, Language::Java), ["x"]);
    }

    #[test]
    fn csharp_interpolation_holes_are_code() {
        let src = r#"var m = $"件数: {count} 件 {{literal}} {f(x, "内側")}";"#;
        let got = extract_spans(src, Language::CSharp).spans;
        let t: Vec<_> = got.iter().map(|s| s.text.as_str()).collect();
        assert_eq!(t, ["件数: ", " 件 {{literal}} ", "内側"]);
        assert_eq!(got[2].flavor, Flavor::Plain);
        assert_eq!(got[0].flavor, Flavor::Interpolated);
        assert!(got.windows(2).all(|w| w[0].byte_end <= w[1].byte_start));

        let src = "var m = $@\"path {dir}\\ファイル\";";
        assert_eq!(texts(src, Language::CSharp), ["path ", "\\ファイル"]);
        let src = "var m = $\"{a}{b}\";";
        assert!(texts(src, Language::CSharp).is_empty());
        let src = "var m = $\"x {new { A = 1 }.A} y\";";
        assert_eq!(texts(src, Language::CSharp), ["x ", " y"]);
        let src = "var m = $\"日付 {d:yyyy/MM/dd} と {(ok ? \"可\" : \"否\")} {global::X.Y}\";";
        assert_eq!(texts(src, Language::CSharp), ["日付 ", " と ", "可", "否", " "]);
    }

    #[test]
    fn raw_strings_and_text_blocks() {
        let src = "var s = \"\"\"\n  生の \"文字列\"\n  \"\"\";";
        assert_eq!(texts(src, Language::CSharp), ["\n  生の \"文字列\"\n  "]);
        let src = "String s = \"\"\"\n    テキスト\n    \"\"\";";
        assert_eq!(texts(src, Language::Java), ["\n    テキスト\n    "]);
        // generic treats "" as an empty string
        assert_eq!(texts("s = \"\"\"x\"\"\"", Language::Generic), ["x"]);
    }

    #[test]
    fn preprocessor_lines_are_skipped() {
        let src = "#region 初期化 don't\nint x; // 後\n#if DEBUG // 注意\n#endif";
        assert_eq!(texts(src, Language::CSharp), ["後", "注意"]);
    }

    #[test]
    fn unterminated_constructs_run_to_eof() {
        let src = "int a; /* 閉じない\nint b;";
        let ex = extract_spans(src, Language::Java);
        assert_eq!(ex.spans.len(), 1);
        assert_eq!(ex.spans[0].byte_end, src.len());
        assert_eq!(ex.diagnostics.len(), 1);
        assert!(ex.diagnostics[0].message.contains("line 1"));

        let src = "x;\ns = \"開いたまま\nnext();";
        let ex = extract_spans(src, Language::CSharp);
        assert_eq!(ex.spans[0].text, "開いたまま\nnext();");
        assert!(ex.diagnostics[0].message.contains("line 2"));

        for src in ["s = @\"abc", "s = $\"a {b", "s = \"\"\"x", "s = \"ab\\"] {
            let ex = extract_spans(src, Language::CSharp);
            assert_eq!(ex.diagnostics.len(), 1, "{src}");
        }
    }

    #[test]
    fn unicode_offsets_are_char_boundaries() {
        let src = "// 日本語\n/*漢字*/\"かな\"";
        for span in extract_spans(src, Language::Generic).spans {
            assert!(src.is_char_boundary(span.byte_start));
            assert!(src.is_char_boundary(span.byte_end));
            assert_eq!(&src[span.byte_start..span.byte_end], span.text);
        }
    }
}
