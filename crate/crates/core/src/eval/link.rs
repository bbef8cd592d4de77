use std::collections::HashSet;
use std::io::{BufRead, BufReader};
use std::path::Path;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::{EvalError, Grade, Qrels};
use crate::corpus::{extension_of, normalize_extension};

/// One record of a commit log export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitRecord {
    pub hash: String,
    pub message: String,
    pub changed_files: Vec<String>,
}

/// Bug ids referenced by `message`: capture group 1 of each match when the
/// pattern has one, else the whole match.
pub fn referenced_ids<'m>(message: &'m str, patterns: &[Regex]) -> Vec<&'m str> {
    let mut ids = Vec::new();
    for re in patterns {
        for caps in re.captures_iter(message) {
            if let Some(m) = caps.get(1).or_else(|| caps.get(0)) {
                if !m.as_str().is_empty() && !ids.contains(&m.as_str()) {
                    ids.push(m.as_str());
                }
            }
        }
    }
    ids
}

/// Direct oracles from commits whose message references a bug id. Only
/// changed files with one of `extensions` count; an empty set accepts all.
pub fn link_oracles<R: BufRead>(
    log: R,
    patterns: &[Regex],
    extensions: &HashSet<String>,
) -> Result<Qrels, EvalError> {
    let extensions: HashSet<String> = extensions.iter().map(|e| normalize_extension(e)).collect();
    let mut qrels = Qrels::new();
    let mut record = 0;
    for line in log.lines() {
        let line = line.map_err(|e| EvalError::CommitLog {
            record: record + 1,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        record += 1;
        let commit: CommitRecord = serde_json::from_str(&line).map_err(|e| EvalError::CommitLog {
            record,
            message: e.to_string(),
        })?;
        let ids = referenced_ids(&commit.message, patterns);
        if ids.is_empty() {
            continue;
        }
        let files: Vec<&String> = commit
            .changed_files
            .iter()
            .filter(|f| extensions.is_empty() || extension_of(f).is_some_and(|e| extensions.contains(&e)))
            .collect();
        for id in ids {
            for f in &files {
                qrels.insert(id, f, Grade::Direct);
            }
        }
    }
    Ok(qrels)
}

pub fn link_oracles_file(
    path: &Path,
    patterns: &[Regex],
    extensions: &HashSet<String>,
) -> Result<Qrels, EvalError> {
    let file = std::fs::File::open(path).map_err(|source| EvalError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    link_oracles(BufReader::new(file), patterns, extensions)
}
