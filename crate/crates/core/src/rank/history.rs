use std::collections::BTreeSet;

use chrono::{DateTime, Utc};

use crate::corpus::BugReport;
use crate::index::{DocumentVector, Index};

/// A resolved report vectorized in the corpus term space.
#[derive(Debug, Clone)]
pub struct PastReport {
    pub id: String,
    pub resolved_at: DateTime<Utc>,
    /// Distinct normalized paths fixed for this report.
    pub fixed_files: Vec<String>,
    pub vector: DocumentVector,
}

impl PastReport {
    /// Number of files fixed to resolve the report.
    pub fn fixed_count(&self) -> usize {
        self.fixed_files.len()
    }

    pub fn fixed(&self, path: &str) -> bool {
        self.fixed_files.binary_search_by(|p| p.as_str().cmp(path)).is_ok()
    }
}

/// Every resolved report with fixed files, ready to be filtered per query.
#[derive(Debug, Clone, Default)]
pub struct History {
    reports: Vec<PastReport>,
}

impl History {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Keep resolved reports that record fixed files and vectorize them
    /// against `index`.
    pub fn new(reports: &[BugReport], index: &Index) -> Self {
        let reports = reports
            .iter()
            .filter_map(|r| {
                let resolved_at = r.resolved_at?;
                let fixed: BTreeSet<String> = r.fixed_paths().into_iter().collect();
                if fixed.is_empty() {
                    return None;
                }
                Some(PastReport {
                    id: r.id.clone(),
                    resolved_at,
                    fixed_files: fixed.into_iter().collect(),
                    vector: index.vectorize_text(&r.query_text()),
                })
            })
            .collect();
        Self { reports }
    }

    pub fn len(&self) -> usize {
        self.reports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }

    /// Reports resolved strictly before `reported_at`.
    pub fn before(&self, reported_at: DateTime<Utc>) -> HistorySet<'_> {
        HistorySet {
            members: self
                .reports
                .iter()
                .filter(|r| r.resolved_at < reported_at)
                .collect(),
        }
    }

    /// Every report, regardless of time. Only for callers that filtered already.
    pub fn all(&self) -> HistorySet<'_> {
        HistorySet {
            members: self.reports.iter().collect(),
        }
    }
}

/// The past reports visible to one query.
#[derive(Debug, Clone, Default)]
pub struct HistorySet<'a> {
    members: Vec<&'a PastReport>,
}

impl<'a> HistorySet<'a> {
    pub fn members(&self) -> &[&'a PastReport] {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
