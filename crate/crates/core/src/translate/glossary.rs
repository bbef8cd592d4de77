use std::collections::HashMap;
use std::path::Path;

use super::{TranslateError, TranslatorBackend};

/// Japanese → English term map applied by greedy longest match.
#[derive(Debug, Clone, Default)]
pub struct Glossary {
    entries: HashMap<String, String>,
    /// Longest key, in chars.
    max_key_chars: usize,
}

impl Glossary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add an entry; returns false (and keeps the old value) if the key exists.
    pub fn insert(&mut self, japanese: impl Into<String>, english: impl Into<String>) -> bool {
        let key = japanese.into();
        if key.is_empty() || self.entries.contains_key(&key) {
            return false;
        }
        self.max_key_chars = self.max_key_chars.max(key.chars().count());
        self.entries.insert(key, english.into());
        true
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parse `japanese<TAB>english` lines. Blank lines and `#` comments are skipped.
    pub fn parse_tsv(input: &str) -> Result<Self, TranslateError> {
        let mut glossary = Self::new();
        for (idx, line) in input.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: &str| TranslateError::Glossary {
                line: idx + 1,
                message: message.to_string(),
            };
            let (ja, en) = line.split_once('\t').ok_or_else(|| bad("expected japanese<TAB>english"))?;
            if ja.is_empty() {
                return Err(bad("empty source term"));
            }
            if !glossary.insert(ja, en) {
                return Err(bad(&format!("duplicate term {ja:?}")));
            }
        }
        Ok(glossary)
    }

    pub fn load(path: &Path) -> Result<Self, TranslateError> {
        let text = std::fs::read_to_string(path).map_err(|source| TranslateError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_tsv(&text)
    }

    /// Replace glossary keys left to right, longest match first. Text not
    /// covered by a key passes through. Two back-to-back matches whose
    /// English sides would fuse into one word are joined with a space.
    pub fn translate(&self, text: &str) -> String {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut out = String::with_capacity(text.len());
        let mut i = 0;
        let mut last_was_match = false;
        while i < chars.len() {
            let start = chars[i].0;
            let longest = (1..=self.max_key_chars.min(chars.len() - i)).rev().find_map(|n| {
                let end = chars.get(i + n).map_or(text.len(), |&(b, _)| b);
                self.entries.get(&text[start..end]).map(|en| (n, en))
            });
            match longest {
                Some((n, en)) => {
                    let fuses = out.chars().next_back().is_some_and(char::is_alphanumeric)
                        && en.chars().next().is_some_and(char::is_alphanumeric);
                    if last_was_match && fuses {
                        out.push(' ');
                    }
                    out.push_str(en);
                    i += n;
                    last_was_match = true;
                }
                None => {
                    out.push(chars[i].1);
                    i += 1;
                    last_was_match = false;
                }
            }
        }
        out
    }
}

/// Offline deterministic backend over a [`Glossary`].
#[derive(Debug, Clone)]
pub struct GlossaryBackend {
    glossary: Glossary,
}

impl GlossaryBackend {
    pub fn new(glossary: Glossary) -> Self {
        Self { glossary }
    }
}

impl TranslatorBackend for GlossaryBackend {
    fn name(&self) -> &str {
        "glossary"
    }

    fn translate_batch(&self, texts: &[String]) -> Result<Vec<String>, TranslateError> {
        Ok(texts.iter().map(|t| self.glossary.translate(t)).collect())
    }
}

/// Free function form of [`Glossary::translate`].
pub fn glossary_translate(text: &str, glossary: &Glossary) -> String {
    glossary.translate(text)
}
