use std::collections::HashSet;
use std::fmt;

use super::{extension_of, BugReport, Corpus};

/// Why a report was left out of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExclusionReason {
    /// Tagged `"functional": false`.
    NotFunctional,
    /// No fixed files recorded.
    FixNotCompleted,
    /// None of the fixed files is a source file present in the corpus.
    NoSourceFileFixed,
}

impl fmt::Display for ExclusionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExclusionReason::NotFunctional => "unrelated to functional bugs",
            ExclusionReason::FixNotCompleted => "fix not completed",
            ExclusionReason::NoSourceFileFixed => "no source file fixed",
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct FilteredReports {
    pub usable: Vec<BugReport>,
    pub excluded: Vec<(BugReport, ExclusionReason)>,
}

/// Split reports into usable ones and excluded ones with the first failing criterion.
///
/// `source_extensions` holds normalized extensions (see [`super::extension_set`]).
pub fn filter_usable_reports(
    reports: &[BugReport],
    corpus: &Corpus,
    source_extensions: &HashSet<String>,
) -> FilteredReports {
    let mut out = FilteredReports::default();
    for report in reports {
        match exclusion(report, corpus, source_extensions) {
            None => out.usable.push(report.clone()),
            Some(reason) => out.excluded.push((report.clone(), reason)),
        }
    }
    out
}

fn exclusion(
    report: &BugReport,
    corpus: &Corpus,
    source_extensions: &HashSet<String>,
) -> Option<ExclusionReason> {
    if !report.functional {
        return Some(ExclusionReason::NotFunctional);
    }
    let fixed = report.fixed_paths();
    if fixed.is_empty() {
        return Some(ExclusionReason::FixNotCompleted);
    }
    let touches_source = fixed.iter().any(|p| {
        extension_of(p).is_some_and(|ext| source_extensions.contains(&ext)) && corpus.contains(p)
    });
    if !touches_source {
        return Some(ExclusionReason::NoSourceFileFixed);
    }
    None
}
