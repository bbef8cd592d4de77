use std::collections::HashSet;
use std::sync::OnceLock;

use rust_stemmers::{Algorithm, Stemmer};
use serde::{Deserialize, Serialize};

const STOPWORDS_EN: &str = include_str!("stopwords_en.txt");

/// Shipped English stopword list.
pub fn english_stopwords() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| {
        STOPWORDS_EN
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TokenizerOptions {
    /// Split camelCase / PascalCase identifiers, keeping the whole identifier too.
    pub split_identifiers: bool,
    /// Drop English stopwords.
    pub stopwords: bool,
    /// Porter (Snowball English) stemming, applied last.
    pub stemming: bool,
}

impl Default for TokenizerOptions {
    fn default() -> Self {
        Self {
            split_identifiers: true,
            stopwords: true,
            stemming: false,
        }
    }
}

/// Tokens shorter than this (in chars) are dropped.
pub const MIN_TOKEN_CHARS: usize = 2;

#[derive(Clone, Copy, PartialEq, Eq)]
enum CharClass {
    Digit,
    Latin,
    Other,
}

fn class_of(c: char) -> CharClass {
    if c.is_numeric() {
        CharClass::Digit
    } else if (c as u32) < 0x250 {
        CharClass::Latin
    } else {
        CharClass::Other
    }
}

/// Split at lower→Upper and at the last capital of an acronym run
/// (`HTTPServer` → `HTTP`, `Server`).
fn split_camel(word: &str) -> Vec<&str> {
    let chars: Vec<(usize, char)> = word.char_indices().collect();
    let mut parts = Vec::new();
    let mut start = 0;
    for i in 1..chars.len() {
        let (at, cur) = chars[i];
        let prev = chars[i - 1].1;
        let next_lower = chars.get(i + 1).is_some_and(|&(_, n)| n.is_lowercase());
        let boundary = (prev.is_lowercase() && cur.is_uppercase())
            || (prev.is_uppercase() && cur.is_uppercase() && next_lower);
        if boundary {
            parts.push(&word[start..at]);
            start = at;
        }
    }
    parts.push(&word[start..]);
    parts
}

/// Maximal runs of one [`CharClass`].
fn class_runs(word: &str) -> impl Iterator<Item = (CharClass, &str)> {
    let mut rest = word;
    std::iter::from_fn(move || {
        let first = rest.chars().next()?;
        let class = class_of(first);
        let end = rest
            .char_indices()
            .find(|&(_, c)| class_of(c) != class)
            .map_or(rest.len(), |(i, _)| i);
        let (run, tail) = rest.split_at(end);
        rest = tail;
        Some((class, run))
    })
}

pub struct Tokenizer {
    options: TokenizerOptions,
    stemmer: Option<Stemmer>,
}

impl Tokenizer {
    pub fn new(options: TokenizerOptions) -> Self {
        Self {
            options,
            stemmer: options.stemming.then(|| Stemmer::create(Algorithm::English)),
        }
    }

    pub fn options(&self) -> TokenizerOptions {
        self.options
    }

    /// Terms of `text`, in order of appearance.
    ///
    /// Words are maximal alphanumeric runs. Digit runs and script changes
    /// inside a word are hard boundaries; digit runs are dropped. With
    /// identifier splitting on, a camel-case run yields the whole run
    /// followed by its parts.
    pub fn tokenize(&self, text: &str) -> Vec<String> {
        let mut raw = Vec::new();
        for word in text.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()) {
            if !self.options.split_identifiers {
                if !word.chars().all(char::is_numeric) {
                    raw.push(word.to_lowercase());
                }
                continue;
            }
            for (class, run) in class_runs(word) {
                match class {
                    CharClass::Digit => {}
                    CharClass::Other => raw.push(run.to_lowercase()),
                    CharClass::Latin => {
                        let parts = split_camel(run);
                        if parts.len() > 1 {
                            raw.push(run.to_lowercase());
                        }
                        raw.extend(parts.into_iter().map(str::to_lowercase));
                    }
                }
            }
        }
        raw.into_iter().filter_map(|t| self.finish(t)).collect()
    }

    fn finish(&self, token: String) -> Option<String> {
        if token.chars().count() < MIN_TOKEN_CHARS {
            return None;
        }
        if self.options.stopwords && english_stopwords().contains(token.as_str()) {
            return None;
        }
        let token = match &self.stemmer {
            Some(s) => s.stem(&token).into_owned(),
            None => token,
        };
        (token.chars().count() >= MIN_TOKEN_CHARS).then_some(token)
    }
}

pub fn tokenize(text: &str, options: &TokenizerOptions) -> Vec<String> {
    Tokenizer::new(*options).tokenize(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(text: &str) -> Vec<String> {
        tokenize(text, &TokenizerOptions::default())
    }

    #[test]
    fn camel_case_keeps_the_whole_identifier() {
        assert_eq!(toks("getUserName"), ["getusername", "get", "user", "name"]);
        assert_eq!(toks("HTTPServer"), ["httpserver", "http", "server"]);
        assert_eq!(toks("XMLHttpRequest"), ["xmlhttprequest", "xml", "http", "request"]);
        assert_eq!(toks("plain"), ["plain"]);
    }

    #[test]
    fn stopwords_are_removed() {
        assert_eq!(toks("the file"), ["file"]);
        let keep = TokenizerOptions {
            stopwords: false,
            ..Default::default()
        };
        assert_eq!(tokenize("the file", &keep), ["the", "file"]);
    }

    #[test]
    fn underscores_and_digits_are_boundaries() {
        // parse | error2x → error, 2 (digits, dropped), x (too short)
        assert_eq!(toks("parse_error2x"), ["parse", "error"]);
        assert_eq!(toks("utf8Decoder 2024"), ["utf", "decoder"]);
        assert_eq!(toks("a b c"), Vec::<String>::new());
    }

    #[test]
    fn scripts_split_and_japanese_survives() {
        assert_eq!(toks("bugを修正"), ["bug", "を修正"]);
        assert_eq!(toks("在庫 引当"), ["在庫", "引当"]);
        assert_eq!(toks("café naïve"), ["café", "naïve"]);
    }

    #[test]
    fn unsplit_mode_keeps_words() {
        let opts = TokenizerOptions {
            split_identifiers: false,
            ..Default::default()
        };
        assert_eq!(tokenize("getUserName parse_error2x 42", &opts), ["getusername", "parse", "error2x"]);
    }

    #[test]
    fn stemming_runs_last() {
        let opts = TokenizerOptions {
            stemming: true,
            ..Default::default()
        };
        assert_eq!(tokenize("connections failed loading", &opts), ["connect", "fail", "load"]);
    }

    #[test]
    fn stopword_list_is_sorted_lowercase() {
        let words: Vec<&str> = STOPWORDS_EN
            .lines()
            .filter(|l| !l.starts_with('#') && !l.is_empty())
            .collect();
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        assert!(words.iter().all(|w| *w == w.to_lowercase()));
        assert_eq!(english_stopwords().len(), words.len());
    }
}
