use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{EvalError, Mode};
use crate::corpus::{normalize_path, BugReport};

/// Relevance of an oracle file. Ordered so that `Direct > Indirect`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grade {
    /// Aids understanding without needing a change. Written as `1`.
    Indirect,
    /// Contains code that had to change. Written as `2`.
    Direct,
}

impl Grade {
    pub fn value(self) -> u8 {
        match self {
            Grade::Indirect => 1,
            Grade::Direct => 2,
        }
    }

    fn from_value(v: i64) -> Option<Option<Grade>> {
        match v {
            0 => Some(None),
            1 => Some(Some(Grade::Indirect)),
            2 => Some(Some(Grade::Direct)),
            _ => None,
        }
    }

    pub fn counts_in(self, mode: Mode) -> bool {
        match mode {
            Mode::DirectOnly => self == Grade::Direct,
            Mode::DirectPlusIndirect => true,
        }
    }
}

/// Oracle files per query id.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Qrels {
    queries: BTreeMap<String, BTreeMap<String, Grade>>,
}

impl Qrels {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add one judgment. A path already judged for the query keeps the
    /// higher grade.
    pub fn insert(&mut self, query: &str, path: &str, grade: Grade) {
        let slot = self
            .queries
            .entry(query.to_string())
            .or_default()
            .entry(normalize_path(path))
            .or_insert(grade);
        *slot = (*slot).max(grade);
    }

    pub fn merge(&mut self, other: &Qrels) {
        for (q, files) in &other.queries {
            for (path, &grade) in files {
                self.insert(q, path, grade);
            }
        }
    }

    pub fn contains_query(&self, query: &str) -> bool {
        self.queries.contains_key(query)
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.queries.keys().map(String::as_str)
    }

    pub fn judgments(&self, query: &str) -> impl Iterator<Item = (&str, Grade)> {
        self.queries
            .get(query)
            .into_iter()
            .flat_map(|m| m.iter().map(|(p, &g)| (p.as_str(), g)))
    }

    /// Oracle set for `query` under `mode`; empty when unknown.
    pub fn oracle(&self, query: &str, mode: Mode) -> BTreeSet<&str> {
        self.judgments(query)
            .filter(|(_, g)| g.counts_in(mode))
            .map(|(p, _)| p)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }

    /// Direct oracles from the `fixed_files` of each report.
    pub fn from_reports(reports: &[BugReport]) -> Self {
        let mut qrels = Self::new();
        for r in reports {
            for path in r.fixed_paths() {
                qrels.insert(&r.id, &path, Grade::Direct);
            }
        }
        qrels
    }

    /// Parse `qid 0 path grade` lines. Grade `0` lines are accepted and
    /// ignored; a path judged twice for one query is an error.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, EvalError> {
        let mut qrels = Self::new();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|e| EvalError::Qrels {
                line: line_no,
                message: e.to_string(),
            })?;
            let bad = |message: String| EvalError::Qrels {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let [qid, _iter, path, grade] = fields[..] else {
                return Err(bad(format!("expected 4 fields, found {}", fields.len())));
            };
            let grade = grade
                .parse::<i64>()
                .ok()
                .and_then(Grade::from_value)
                .ok_or_else(|| bad(format!("grade must be 0, 1 or 2, got {grade:?}")))?;
            let path = normalize_path(path);
            let files = qrels.queries.entry(qid.to_string()).or_default();
            if files.contains_key(&path) {
                return Err(bad(format!("{path} judged twice for {qid}")));
            }
            if let Some(g) = grade {
                files.insert(path, g);
            }
        }
        qrels.queries.retain(|_, files| !files.is_empty());
        Ok(qrels)
    }

    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (q, files) in &self.queries {
            for (path, grade) in files {
                writeln!(out, "{q} 0 {path} {}", grade.value())?;
            }
        }
        out.flush()
    }
}

impl fmt::Display for Qrels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut buf = Vec::new();
        self.write(&mut buf).map_err(|_| fmt::Error)?;
        f.write_str(&String::from_utf8_lossy(&buf))
    }
}

pub fn load_qrels(path: &Path) -> Result<Qrels, EvalError> {
    let file = std::fs::File::open(path).map_err(|source| EvalError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Qrels::parse(BufReader::new(file))
}
