//! Tokenization, term statistics and tf-idf document vectors.
//!
//! Weights follow the log-scaled scheme
//!
//! ```text
//! tf(t, d) = ln(c(t,d) / c(d) + 1)
//! idf(t)   = ln(|D| / df(t))
//! w(t, d)  = tf(t, d) * idf(t)
//! ```
//!
//! where `c(t,d)` counts occurrences of `t` in `d` and `c(d)` counts all of
//! `d`'s tokens after filtering. Natural log throughout.

mod persist;
mod tokenize;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::corpus::Corpus;

pub use persist::{read_index, write_index, INDEX_FORMAT, INDEX_VERSION};
pub use tokenize::{english_stopwords, tokenize, Tokenizer, TokenizerOptions, MIN_TOKEN_CHARS};

pub type TermId = u32;

#[derive(Debug, thiserror::Error)]
pub enum IndexError {
    #[error("cannot index an empty corpus")]
    EmptyCorpus,
    #[error("duplicate document path {0}")]
    DuplicatePath(String),
    #[error("cannot access {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid index file: {0}")]
    Format(String),
}

/// `ln(c_td / c_d + 1)`. An empty document (`c_d == 0`) has no terms, so its
/// term frequencies are all zero.
pub fn tf(c_td: usize, c_d: usize) -> f64 {
    debug_assert!(c_td <= c_d, "term count {c_td} exceeds document length {c_d}");
    if c_d == 0 {
        return 0.0;
    }
    (c_td as f64 / c_d as f64 + 1.0).ln()
}

/// `ln(|D| / df)`.
///
/// # Panics
/// If `df` is zero or exceeds `corpus_size`; a term only exists once it
/// occurs in some document.
pub fn idf(df: usize, corpus_size: usize) -> f64 {
    assert!(
        df >= 1 && df <= corpus_size,
        "document frequency {df} outside 1..={corpus_size}"
    );
    (corpus_size as f64 / df as f64).ln()
}

/// Vocabulary and document frequencies over a frozen corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct TermStats {
    terms: Vec<String>,
    ids: HashMap<String, TermId>,
    document_frequency: Vec<u32>,
    corpus_size: usize,
}

impl TermStats {
    fn from_parts(terms: Vec<String>, document_frequency: Vec<u32>, corpus_size: usize) -> Self {
        let ids = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as TermId))
            .collect();
        Self {
            terms,
            ids,
            document_frequency,
            corpus_size,
        }
    }

    pub fn id(&self, term: &str) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    pub fn term(&self, id: TermId) -> &str {
        &self.terms[id as usize]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn document_frequency(&self, id: TermId) -> usize {
        self.document_frequency[id as usize] as usize
    }

    pub fn corpus_size(&self) -> usize {
        self.corpus_size
    }

    pub fn idf(&self, id: TermId) -> f64 {
        idf(self.document_frequency(id), self.corpus_size)
    }
}

/// Sparse tf-idf vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentVector {
    /// Total tokens, including any not in the vocabulary.
    pub term_count: usize,
    /// Nonzero weights sorted by term id.
    pub weights: Vec<(TermId, f64)>,
    pub norm: f64,
}

impl DocumentVector {
    pub fn zero(term_count: usize) -> Self {
        Self {
            term_count,
            weights: Vec::new(),
            norm: 0.0,
        }
    }

    fn from_weights(term_count: usize, mut weights: Vec<(TermId, f64)>) -> Self {
        weights.retain(|&(_, w)| w != 0.0);
        weights.sort_by_key(|&(id, _)| id);
        let norm = weights.iter().map(|&(_, w)| w * w).sum::<f64>().sqrt();
        Self {
            term_count,
            weights,
            norm,
        }
    }

    pub fn weight(&self, id: TermId) -> f64 {
        self.weights
            .binary_search_by_key(&id, |&(t, _)| t)
            .map_or(0.0, |i| self.weights[i].1)
    }

    pub fn is_zero(&self) -> bool {
        self.norm == 0.0
    }

    pub fn dot(&self, other: &DocumentVector) -> f64 {
        let (a, b) = (&self.weights, &other.weights);
        let (mut i, mut j, mut sum) = (0, 0, 0.0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    sum += a[i].1 * b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        sum
    }
}

/// Term statistics plus one vector per document.
#[derive(Debug, Clone, PartialEq)]
pub struct Index {
    pub stats: TermStats,
    /// Document paths; position is the document id.
    pub paths: Vec<String>,
    pub vectors: Vec<DocumentVector>,
    /// Largest and smallest `term_count` over the corpus.
    pub c_max: usize,
    pub c_min: usize,
    pub tokenizer: TokenizerOptions,
}

impl Index {
    /// Tokenize every document of `corpus` and index it.
    pub fn from_corpus(corpus: &Corpus, options: TokenizerOptions) -> Result<Index, IndexError> {
        let tokenizer = Tokenizer::new(options);
        let docs: Vec<(String, Vec<String>)> = corpus
            .documents
            .par_iter()
            .map(|d| (d.path.clone(), tokenizer.tokenize(&d.raw_text)))
            .collect();
        build_index(docs, options)
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn position(&self, path: &str) -> Option<usize> {
        self.paths.iter().position(|p| p == path)
    }

    /// Vector for already-tokenized text, in this index's term space.
    /// Out-of-vocabulary tokens count toward the length but get no weight.
    pub fn vectorize_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> DocumentVector {
        let mut counts: BTreeMap<TermId, usize> = BTreeMap::new();
        for t in tokens {
            if let Some(id) = self.stats.id(t.as_ref()) {
                *counts.entry(id).or_default() += 1;
            }
        }
        let c_q = tokens.len();
        let weights = counts
            .into_iter()
            .map(|(id, c)| (id, tf(c, c_q) * self.stats.idf(id)))
            .collect();
        DocumentVector::from_weights(c_q, weights)
    }

    pub fn vectorize_text(&self, text: &str) -> DocumentVector {
        self.vectorize_tokens(&Tokenizer::new(self.tokenizer).tokenize(text))
    }
}

/// Index pre-tokenized documents given as `(path, tokens)`.
///
/// Term ids follow sorted term order, so they do not depend on document order.
pub fn build_index<I, S>(docs: I, tokenizer: TokenizerOptions) -> Result<Index, IndexError>
where
    I: IntoIterator<Item = (String, Vec<S>)>,
    S: AsRef<str>,
{
    let docs: Vec<(String, Vec<S>)> = docs.into_iter().collect();
    if docs.is_empty() {
        return Err(IndexError::EmptyCorpus);
    }
    let mut seen = BTreeSet::new();
    for (path, _) in &docs {
        if !seen.insert(path.as_str()) {
            return Err(IndexError::DuplicatePath(path.clone()));
        }
    }

    let counts: Vec<BTreeMap<&str, usize>> = docs
        .iter()
        .map(|(_, tokens)| {
            let mut m = BTreeMap::new();
            for t in tokens {
                *m.entry(t.as_ref()).or_default() += 1;
            }
            m
        })
        .collect();

    let mut df: BTreeMap<&str, u32> = BTreeMap::new();
    for doc in &counts {
        for term in doc.keys() {
            *df.entry(term).or_default() += 1;
        }
    }
    let (terms, document_frequency): (Vec<String>, Vec<u32>) =
        df.into_iter().map(|(t, n)| (t.to_string(), n)).unzip();
    let stats = TermStats::from_parts(terms, document_frequency, docs.len());

    let vectors: Vec<DocumentVector> = docs
        .iter()
        .zip(&counts)
        .map(|((_, tokens), doc)| {
            let c_d = tokens.len();
            let weights = doc
                .iter()
                .map(|(term, &c)| {
                    let id = stats.id(term).expect("term was counted");
                    (id, tf(c, c_d) * stats.idf(id))
                })
                .collect();
            DocumentVector::from_weights(c_d, weights)
        })
        .collect();

    let c_max = vectors.iter().map(|v| v.term_count).max().unwrap_or(0);
    let c_min = vectors.iter().map(|v| v.term_count).min().unwrap_or(0);
    Ok(Index {
        stats,
        paths: docs.into_iter().map(|(p, _)| p).collect(),
        vectors,
        c_max,
        c_min,
        tokenizer,
    })
}

/// Query vector for `text` (callers pass summary + "\n" + description).
pub fn vectorize_query(text: &str, index: &Index) -> DocumentVector {
    index.vectorize_text(text)
}
