//! Independent reference implementations and fixture helpers shared by the
//! integration tests and the acceptance harness.
//!
//! Everything here works on plain term-keyed maps and recomputes each
//! quantity straight from its definition; nothing reuses library scoring.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;

use chrono::{DateTime, Duration, TimeZone, Utc};
use croloc::corpus::BugReport;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Alphabetic, non-stopword, so the tokenizer passes each through unchanged.
pub const VOCAB: [&str; 20] = [
    "alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel", "india", "juliet", "kilo",
    "lima", "mike", "november", "oscar", "papa", "quebec", "romeo", "sierra", "tango",
];
/// Words that never occur in generated documents.
pub const OOV: [&str; 3] = ["uniform", "victor", "whiskey"];

pub type Vector = BTreeMap<String, f64>;

pub fn tf(c_td: usize, c_d: usize) -> f64 {
    (c_td as f64 / c_d as f64 + 1.0).ln()
}

pub fn idf(df: usize, n: usize) -> f64 {
    (n as f64 / df as f64).ln()
}

/// Document frequencies over `docs`.
pub fn document_frequencies(docs: &[Vec<String>]) -> HashMap<String, usize> {
    let mut df = HashMap::new();
    for d in docs {
        let distinct: BTreeSet<&String> = d.iter().collect();
        for t in distinct {
            *df.entry(t.clone()).or_insert(0) += 1;
        }
    }
    df
}

/// tf-idf vector of `tokens` over a vocabulary given by `df`. The length
/// `c_d` counts every token, in vocabulary or not.
pub fn weights(tokens: &[String], df: &HashMap<String, usize>, n: usize) -> Vector {
    let mut counts: BTreeMap<&String, usize> = BTreeMap::new();
    for t in tokens {
        *counts.entry(t).or_insert(0) += 1;
    }
    let mut v = Vector::new();
    for (t, c) in counts {
        if let Some(&d) = df.get(t) {
            v.insert(t.clone(), tf(c, tokens.len()) * idf(d, n));
        }
    }
    v
}

pub fn cosine(a: &Vector, b: &Vector) -> f64 {
    let mut dot = 0.0;
    for (t, x) in a {
        if let Some(y) = b.get(t) {
            dot += x * y;
        }
    }
    let na = a.values().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.values().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

pub fn normalize(x: f64, lo: f64, hi: f64) -> f64 {
    if hi == lo {
        0.5
    } else {
        (x - lo) / (hi - lo)
    }
}

pub fn normalize_all(xs: &[f64]) -> Vec<f64> {
    let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    xs.iter().map(|&x| normalize(x, lo, hi)).collect()
}

pub fn rvsm(cos: f64, c_d: usize, c_min: usize, c_max: usize) -> f64 {
    let n = normalize(c_d as f64, c_min as f64, c_max as f64);
    cos / (1.0 + (-n).exp())
}

/// Past report as the oracle sees it.
pub struct PastFix {
    pub tokens: Vec<String>,
    pub fixed: BTreeSet<String>,
    pub resolved_at: DateTime<Utc>,
}

pub fn simi(query: &Vector, path: &str, history: &[(Vector, &PastFix)]) -> f64 {
    history
        .iter()
        .filter(|(_, b)| b.fixed.contains(path))
        .map(|(v, b)| cosine(query, v) / b.fixed.len() as f64)
        .sum()
}

/// Oracle scores of every document for one query.
pub struct OracleScores {
    pub vsm: Vec<f64>,
    pub rvsm: Vec<f64>,
    pub simi: Vec<f64>,
}

impl OracleScores {
    pub fn buglocator(&self, alpha: f64) -> Vec<f64> {
        let r = normalize_all(&self.rvsm);
        let s = normalize_all(&self.simi);
        r.iter().zip(&s).map(|(r, s)| (1.0 - alpha) * r + alpha * s).collect()
    }
}

pub struct OracleCorpus {
    pub paths: Vec<String>,
    pub docs: Vec<Vec<String>>,
    pub df: HashMap<String, usize>,
}

impl OracleCorpus {
    pub fn new(paths: Vec<String>, docs: Vec<Vec<String>>) -> Self {
        let df = document_frequencies(&docs);
        Self { paths, docs, df }
    }

    pub fn n(&self) -> usize {
        self.docs.len()
    }

    pub fn vector(&self, tokens: &[String]) -> Vector {
        weights(tokens, &self.df, self.n())
    }

    pub fn scores(&self, query: &[String], history: &[PastFix], reported_at: DateTime<Utc>) -> OracleScores {
        let q = self.vector(query);
        let c_min = self.docs.iter().map(Vec::len).min().unwrap();
        let c_max = self.docs.iter().map(Vec::len).max().unwrap();
        let visible: Vec<(Vector, &PastFix)> = history
            .iter()
            .filter(|b| b.resolved_at < reported_at && !b.fixed.is_empty())
            .map(|b| (self.vector(&b.tokens), b))
            .collect();
        let mut out = OracleScores {
            vsm: vec![],
            rvsm: vec![],
            simi: vec![],
        };
        for (path, doc) in self.paths.iter().zip(&self.docs) {
            let cos = cosine(&q, &self.vector(doc));
            out.vsm.push(cos);
            out.rvsm.push(rvsm(cos, doc.len(), c_min, c_max));
            out.simi.push(simi(&q, path, &visible));
        }
        out
    }
}

/// Relative agreement; exact zeros must match exactly.
pub fn agrees(a: f64, b: f64, rel: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

pub fn epoch() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2022, 1, 1, 0, 0, 0).unwrap()
}

/// A random corpus with history and queries.
pub struct RandomCase {
    pub corpus: OracleCorpus,
    pub history: Vec<PastFix>,
    pub queries: Vec<(Vec<String>, DateTime<Utc>)>,
}

impl RandomCase {
    pub fn generate(rng: &mut ChaCha8Rng) -> Self {
        let n_docs = rng.gen_range(1..=10);
        let n_terms = rng.gen_range(1..=20);
        let vocab = &VOCAB[..n_terms];
        let mut paths = Vec::new();
        let mut docs = Vec::new();
        for i in 0..n_docs {
            let len = rng.gen_range(1..=40);
            docs.push((0..len).map(|_| vocab.choose(rng).unwrap().to_string()).collect());
            paths.push(format!("src/m{}/F{i}.java", rng.gen_range(0..3)));
        }
        paths.sort();
        paths.dedup();
        docs.truncate(paths.len());
        let words = |rng: &mut ChaCha8Rng, len: usize| -> Vec<String> {
            (0..len)
                .map(|_| {
                    if rng.gen_bool(0.1) {
                        OOV.choose(rng).unwrap().to_string()
                    } else {
                        vocab.choose(rng).unwrap().to_string()
                    }
                })
                .collect()
        };
        let history = (0..rng.gen_range(0..6))
            .map(|_| {
                let len = rng.gen_range(1..12);
                let k = rng.gen_range(0..=paths.len().min(3));
                PastFix {
                    tokens: words(rng, len),
                    fixed: paths.choose_multiple(rng, k).cloned().collect(),
                    resolved_at: epoch() + Duration::days(rng.gen_range(0..100)),
                }
            })
            .collect();
        let queries = (0..3)
            .map(|_| {
                let len = rng.gen_range(0..10);
                (words(rng, len), epoch() + Duration::days(rng.gen_range(0..120)))
            })
            .collect();
        Self {
            corpus: OracleCorpus::new(paths, docs),
            history,
            queries,
        }
    }

    /// History as bug reports the library can ingest.
    pub fn reports(&self) -> Vec<BugReport> {
        self.history
            .iter()
            .enumerate()
            .map(|(i, h)| BugReport {
                id: format!("H{i}"),
                summary: h.tokens.join(" "),
                description: String::new(),
                reported_at: h.resolved_at - Duration::days(1),
                resolved_at: Some(h.resolved_at),
                fixed_files: Some(h.fixed.iter().cloned().collect()),
                functional: true,
            })
            .collect()
    }
}

pub fn query_report(id: &str, tokens: &[String], reported_at: DateTime<Utc>) -> BugReport {
    BugReport {
        id: id.to_string(),
        summary: tokens.join(" "),
        description: String::new(),
        reported_at,
        resolved_at: None,
        fixed_files: None,
        functional: true,
    }
}

/// Reference trec_eval-style metrics for one query: `(ap, rr, first_rank)`.
pub fn reference_metrics(ranked: &[&str], oracle: &[&str]) -> (f64, f64, Option<usize>) {
    let mut hits = 0usize;
    let mut precision_sum = 0.0;
    let mut first = None;
    for (i, doc) in ranked.iter().enumerate() {
        if oracle.contains(doc) {
            hits += 1;
            precision_sum += hits as f64 / (i + 1) as f64;
            first.get_or_insert(i + 1);
        }
    }
    let ap = precision_sum / oracle.len() as f64;
    let rr = first.map_or(0.0, |k| 1.0 / k as f64);
    (ap, rr, first)
}
