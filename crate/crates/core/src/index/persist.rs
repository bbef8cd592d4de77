//! JSON index file.
//!
//! ```text
//! {
//!   "format": "croloc-index",
//!   "version": 1,
//!   "tokenizer": {"split_identifiers": true, "stopwords": true, "stemming": false},
//!   "corpus_size": 3,
//!   "c_min": 12, "c_max": 840,
//!   "terms": ["alloc", "bug", ...],                 // term id = position
//!   "document_frequency": [2, 1, ...],              // parallel to terms
//!   "documents": [
//!     {"path": "src/A.java", "term_count": 120, "weights": [[0, 0.0123], [5, 0.31]]}
//!   ]
//! }
//! ```
//!
//! Weights are written with round-trip float formatting, so a reloaded
//! index scores identically. Norms are recomputed on load.

use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DocumentVector, Index, IndexError, TermId, TermStats, TokenizerOptions};

pub const INDEX_FORMAT: &str = "croloc-index";
pub const INDEX_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct IndexFile {
    format: String,
    version: u32,
    tokenizer: TokenizerOptions,
    corpus_size: usize,
    c_min: usize,
    c_max: usize,
    terms: Vec<String>,
    document_frequency: Vec<u32>,
    documents: Vec<DocumentRecord>,
}

#[derive(Serialize, Deserialize)]
struct DocumentRecord {
    path: String,
    term_count: usize,
    weights: Vec<(TermId, f64)>,
}

pub fn write_index(index: &Index, path: &Path) -> Result<(), IndexError> {
    let file = IndexFile {
        format: INDEX_FORMAT.into(),
        version: INDEX_VERSION,
        tokenizer: index.tokenizer,
        corpus_size: index.stats.corpus_size(),
        c_min: index.c_min,
        c_max: index.c_max,
        terms: index.stats.terms().to_vec(),
        document_frequency: (0..index.stats.len() as TermId)
            .map(|id| index.stats.document_frequency(id) as u32)
            .collect(),
        documents: index
            .paths
            .iter()
            .zip(&index.vectors)
            .map(|(p, v)| DocumentRecord {
                path: p.clone(),
                term_count: v.term_count,
                weights: v.weights.clone(),
            })
            .collect(),
    };
    let io_err = |source| IndexError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io_err)?;
    }
    let mut out = BufWriter::new(std::fs::File::create(path).map_err(io_err)?);
    serde_json::to_writer(&mut out, &file).map_err(|e| IndexError::Format(e.to_string()))?;
    out.write_all(b"\n").and_then(|_| out.flush()).map_err(io_err)
}

pub fn read_index(path: &Path) -> Result<Index, IndexError> {
    let reader = std::fs::File::open(path).map_err(|source| IndexError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file: IndexFile = serde_json::from_reader(BufReader::new(reader))
        .map_err(|e| IndexError::Format(e.to_string()))?;
    from_file(file)
}

fn from_file(file: IndexFile) -> Result<Index, IndexError> {
    let bad = |m: String| Err(IndexError::Format(m));
    if file.format != INDEX_FORMAT {
        return bad(format!("unexpected format tag {:?}", file.format));
    }
    if file.version != INDEX_VERSION {
        return bad(format!("unsupported version {}", file.version));
    }
    if file.terms.len() != file.document_frequency.len() {
        return bad("terms and document_frequency differ in length".into());
    }
    if file.corpus_size != file.documents.len() || file.documents.is_empty() {
        return bad("corpus_size does not match the document list".into());
    }
    if file
        .document_frequency
        .iter()
        .any(|&df| df == 0 || df as usize > file.corpus_size)
    {
        return bad("document frequency out of range".into());
    }
    let vocab = file.terms.len();
    let mut paths = Vec::with_capacity(file.documents.len());
    let mut vectors = Vec::with_capacity(file.documents.len());
    for doc in file.documents {
        if doc
            .weights
            .iter()
            .any(|&(id, w)| id as usize >= vocab || !w.is_finite() || w < 0.0)
        {
            return bad(format!("bad weight entry in {}", doc.path));
        }
        if doc.term_count < file.c_min || doc.term_count > file.c_max {
            return bad(format!("term count of {} outside [c_min, c_max]", doc.path));
        }
        paths.push(doc.path);
        vectors.push(DocumentVector::from_weights(doc.term_count, doc.weights));
    }
    Ok(Index {
        stats: TermStats::from_parts(file.terms, file.document_frequency, file.corpus_size),
        paths,
        vectors,
        c_max: file.c_max,
        c_min: file.c_min,
        tokenizer: file.tokenizer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::build_index;

    #[test]
    fn written_index_reads_back_identically() {
        let index = build_index(
            [
                ("src/A.java".to_string(), vec!["alpha", "beta", "beta"]),
                ("src/B.java".to_string(), vec!["beta", "gamma"]),
                ("src/C.java".to_string(), vec!["delta"]),
            ],
            TokenizerOptions {
                stemming: true,
                ..Default::default()
            },
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out/index.json");
        write_index(&index, &path).unwrap();
        let back = read_index(&path).unwrap();
        assert_eq!(back, index);

        let text = std::fs::read_to_string(&path).unwrap();
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json["format"], INDEX_FORMAT);
        assert_eq!(json["version"], INDEX_VERSION);
    }

    #[test]
    fn weights_survive_the_file_bit_for_bit() {
        // Misparsed by one ulp without correctly rounded float parsing.
        let w = 0.025905136262621826_f64;
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<f64>(&text).unwrap().to_bits(), w.to_bits());
    }

    #[test]
    fn rejects_foreign_or_inconsistent_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("index.json");
        std::fs::write(&path, r#"{"format":"other","version":1,"tokenizer":{},"corpus_size":0,"c_min":0,"c_max":0,"terms":[],"document_frequency":[],"documents":[]}"#).unwrap();
        assert!(matches!(read_index(&path), Err(IndexError::Format(_))));
        std::fs::write(&path, r#"{"format":"croloc-index","version":1,"tokenizer":{},"corpus_size":1,"c_min":1,"c_max":1,"terms":["a"],"document_frequency":[1],"documents":[{"path":"p","term_count":1,"weights":[[3,0.5]]}]}"#).unwrap();
        assert!(matches!(read_index(&path), Err(IndexError::Format(_))));
        assert!(matches!(read_index(&dir.path().join("missing.json")), Err(IndexError::Io { .. })));
    }
}
