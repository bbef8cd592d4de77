//! Oracle sets and retrieval metrics with trec_eval semantics.
//!
//! Average precision divides by the oracle size, so relevant files missing
//! from a truncated run contribute 0. Queries whose oracle is empty in the
//! selected [`Mode`] are excluded from aggregates with a warning.

mod link;
mod qrels;
mod run;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use link::{link_oracles, link_oracles_file, referenced_ids, CommitRecord};
pub use qrels::{load_qrels, Grade, Qrels};
pub use run::{load_run, Run, RunEntry};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("qrels line {line}: {message}")]
    Qrels { line: usize, message: String },
    #[error("run line {line}: {message}")]
    Run { line: usize, message: String },
    #[error("commit log record {record}: {message}")]
    CommitLog { record: usize, message: String },
    #[error("run queries missing from qrels: {}", .0.join(", "))]
    MissingQrels(Vec<String>),
    #[error("unknown mode {0:?} (expected direct or direct+indirect)")]
    UnknownMode(String),
}

/// Which grades count as relevant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "direct")]
    DirectOnly,
    #[serde(rename = "direct+indirect")]
    DirectPlusIndirect,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::DirectOnly => "direct",
            Mode::DirectPlusIndirect => "direct+indirect",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = EvalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct" | "direct_only" => Ok(Mode::DirectOnly),
            "direct+indirect" | "direct_plus_indirect" => Ok(Mode::DirectPlusIndirect),
            other => Err(EvalError::UnknownMode(other.to_string())),
        }
    }
}

/// Ranks (1-based) of relevant items, skipping repeated paths.
fn relevant_ranks<S: AsRef<str>>(ranked: &[S], oracle: &BTreeSet<&str>) -> Vec<usize> {
    let mut seen = HashSet::new();
    let mut ranks = Vec::new();
    let mut k = 0;
    for path in ranked {
        let path = path.as_ref();
        if !seen.insert(path) {
            continue;
        }
        k += 1;
        if oracle.contains(path) {
            ranks.push(k);
        }
    }
    ranks
}

/// Uninterpolated AP; `None` for an empty oracle.
pub fn average_precision<S: AsRef<str>>(ranked: &[S], oracle: &BTreeSet<&str>) -> Option<f64> {
    if oracle.is_empty() {
        return None;
    }
    let sum: f64 = relevant_ranks(ranked, oracle)
        .iter()
        .enumerate()
        .map(|(i, &k)| (i + 1) as f64 / k as f64)
        .sum();
    Some(sum / oracle.len() as f64)
}

/// `1 / rank` of the first relevant item, 0 if none; `None` for an empty oracle.
pub fn reciprocal_rank<S: AsRef<str>>(ranked: &[S], oracle: &BTreeSet<&str>) -> Option<f64> {
    if oracle.is_empty() {
        return None;
    }
    Some(first_relevant(ranked, oracle).map_or(0.0, |k| 1.0 / k as f64))
}

pub fn first_relevant<S: AsRef<str>>(ranked: &[S], oracle: &BTreeSet<&str>) -> Option<usize> {
    relevant_ranks(ranked, oracle).first().copied()
}

/// Fraction of evaluated queries with an oracle file in the top `n`.
/// Queries with an empty oracle under `mode` are skipped.
pub fn success_at_n(run: &Run, qrels: &Qrels, mode: Mode, n: usize) -> f64 {
    assert!(n >= 1, "success@n needs n >= 1");
    let mut total = 0usize;
    let mut hits = 0usize;
    for q in run.query_ids() {
        let oracle = qrels.oracle(q, mode);
        if oracle.is_empty() {
            continue;
        }
        total += 1;
        if first_relevant(&run.ranked(q), &oracle).is_some_and(|k| k <= n) {
            hits += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        hits as f64 / total as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryMetrics {
    pub query_id: String,
    pub oracle_size: usize,
    pub first_relevant_rank: Option<usize>,
    pub average_precision: f64,
    pub reciprocal_rank: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub mode: Mode,
    pub query_count: usize,
    pub map: f64,
    pub mrr: f64,
    pub success_at_5: f64,
    pub success_at_10: f64,
    pub queries: Vec<QueryMetrics>,
    /// Run queries with no oracle under `mode`.
    pub excluded: Vec<String>,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<16} {:>7} {:>6} {:>8} {:>8}", "query", "oracle", "first", "AP", "RR")?;
        for q in &self.queries {
            let first = q.first_relevant_rank.map_or("-".to_string(), |k| k.to_string());
            writeln!(
                f,
                "{:<16} {:>7} {:>6} {:>8.4} {:>8.4}",
                q.query_id, q.oracle_size, first, q.average_precision, q.reciprocal_rank
            )?;
        }
        writeln!(f)?;
        writeln!(f, "mode        {}", self.mode)?;
        writeln!(f, "queries     {}", self.query_count)?;
        if !self.excluded.is_empty() {
            writeln!(f, "excluded    {}", self.excluded.join(" "))?;
        }
        writeln!(f, "MAP         {:.4}", self.map)?;
        writeln!(f, "MRR         {:.4}", self.mrr)?;
        writeln!(f, "Success@5   {:.4}", self.success_at_5)?;
        write!(f, "Success@10  {:.4}", self.success_at_10)
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// Score every run query against `qrels`. Run entries are taken in rank
/// column order.
pub fn evaluate(run: &Run, qrels: &Qrels, mode: Mode) -> Result<EvalReport, EvalError> {
    let missing: Vec<String> = run
        .query_ids()
        .filter(|q| !qrels.contains_query(q))
        .map(String::from)
        .collect();
    if !missing.is_empty() {
        return Err(EvalError::MissingQrels(missing));
    }
    let mut queries = Vec::new();
    let mut excluded = Vec::new();
    for q in run.query_ids() {
        let oracle = qrels.oracle(q, mode);
        let ranked = run.ranked(q);
        match (average_precision(&ranked, &oracle), reciprocal_rank(&ranked, &oracle)) {
            (Some(ap), Some(rr)) => queries.push(QueryMetrics {
                query_id: q.to_string(),
                oracle_size: oracle.len(),
                first_relevant_rank: first_relevant(&ranked, &oracle),
                average_precision: ap,
                reciprocal_rank: rr,
            }),
            _ => {
                log::warn!("query {q} has no {mode} oracle files; excluded");
                excluded.push(q.to_string());
            }
        }
    }
    let hit_rate = |n: usize| {
        mean(queries.iter().map(|m| {
            if m.first_relevant_rank.is_some_and(|k| k <= n) {
                1.0
            } else {
                0.0
            }
        }))
    };
    Ok(EvalReport {
        mode,
        query_count: queries.len(),
        map: mean(queries.iter().map(|m| m.average_precision)),
        mrr: mean(queries.iter().map(|m| m.reciprocal_rank)),
        success_at_5: hit_rate(5),
        success_at_10: hit_rate(10),
        queries,
        excluded,
    })
}
