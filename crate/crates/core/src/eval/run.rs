use std::collections::BTreeMap;
use std::io::{BufRead, BufReader};
use std::path::Path;

use super::EvalError;
use crate::rank::Ranking;

#[derive(Debug, Clone, PartialEq)]
pub struct RunEntry {
    pub path: String,
    pub rank: usize,
    pub score: f64,
}

/// A parsed TREC run. Entries of each query are ordered by the rank column.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Run {
    queries: BTreeMap<String, Vec<RunEntry>>,
}

impl Run {
    pub fn from_rankings(rankings: &[Ranking]) -> Self {
        let queries = rankings
            .iter()
            .map(|r| {
                let entries = r
                    .entries
                    .iter()
                    .map(|e| RunEntry {
                        path: e.path.clone(),
                        rank: e.rank,
                        score: e.score,
                    })
                    .collect();
                (r.query_id.clone(), entries)
            })
            .collect();
        Self { queries }
    }

    /// Parse `qid Q0 path rank score tag` lines.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, EvalError> {
        let mut queries: BTreeMap<String, Vec<RunEntry>> = BTreeMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let bad = |message: String| EvalError::Run {
                line: line_no,
                message,
            };
            let line = line.map_err(|e| bad(e.to_string()))?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let [qid, _q0, path, rank, score, _tag] = fields[..] else {
                return Err(bad(format!("expected 6 fields, found {}", fields.len())));
            };
            let rank: usize = rank
                .parse()
                .ok()
                .filter(|&r| r >= 1)
                .ok_or_else(|| bad(format!("bad rank {rank:?}")))?;
            let score: f64 = score
                .parse()
                .ok()
                .filter(|s: &f64| s.is_finite())
                .ok_or_else(|| bad(format!("bad score {score:?}")))?;
            let entries = queries.entry(qid.to_string()).or_default();
            if entries.iter().any(|e| e.path == path) {
                return Err(bad(format!("{path} ranked twice for {qid}")));
            }
            entries.push(RunEntry {
                path: path.to_string(),
                rank,
                score,
            });
        }
        for entries in queries.values_mut() {
            entries.sort_by_key(|e| e.rank);
        }
        Ok(Self { queries })
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.queries.keys().map(String::as_str)
    }

    pub fn entries(&self, query: &str) -> &[RunEntry] {
        self.queries.get(query).map_or(&[], Vec::as_slice)
    }

    /// Paths of `query` in rank order.
    pub fn ranked(&self, query: &str) -> Vec<&str> {
        self.entries(query).iter().map(|e| e.path.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }
}

pub fn load_run(path: &Path) -> Result<Run, EvalError> {
    let file = std::fs::File::open(path).map_err(|source| EvalError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Run::parse(BufReader::new(file))
}
