//! Scoring source files against a bug report.
//!
//! * VSM: cosine similarity of tf-idf vectors.
//! * rVSM: VSM scaled by `1 / (1 + e^-N(c_d))`, where `N` min-max normalizes
//!   the document's token count over the corpus; larger files score higher.
//! * BugLocator: `(1 - α) N(rVSM) + α N(Simi)`, where `Simi(q, d)` sums
//!   `cos(q, b) / n_b` over earlier reports `b` that fixed `d` (`n_b` files
//!   each) and `N` min-max normalizes each score family over all documents.

mod history;
mod trec;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::BugReport;
use crate::index::{DocumentVector, Index};

pub use history::{History, HistorySet, PastReport};
pub use trec::{write_run, DEFAULT_TOP_K};

pub const DEFAULT_ALPHA: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RankError {
    #[error("cannot rank against an empty corpus")]
    EmptyCorpus,
    #[error("alpha must lie in [0, 1], got {0}")]
    InvalidAlpha(f64),
    #[error("unknown technique {0:?} (expected vsm, rvsm or buglocator)")]
    UnknownTechnique(String),
}

/// Weight of history in BugLocator, within `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self, RankError> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(RankError::InvalidAlpha(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for Alpha {
    fn default() -> Self {
        Self(DEFAULT_ALPHA)
    }
}

impl TryFrom<f64> for Alpha {
    type Error = RankError;
    fn try_from(v: f64) -> Result<Self, Self::Error> {
        Alpha::new(v)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

/// `dot(a, b) / (|a| |b|)`, or 0 when either vector is zero.
pub fn cosine(a: &DocumentVector, b: &DocumentVector) -> f64 {
    if a.norm == 0.0 || b.norm == 0.0 {
        return 0.0;
    }
    a.dot(b) / (a.norm * b.norm)
}

pub fn vsm_score(query: &DocumentVector, doc: &DocumentVector) -> f64 {
    cosine(query, doc)
}

/// `(x - lo) / (hi - lo)`; 0.5 when `hi == lo`. Values outside `[lo, hi]`
/// are clamped into `[0, 1]` with a warning.
pub fn minmax(x: f64, lo: f64, hi: f64) -> f64 {
    debug_assert!(lo <= hi, "minmax bounds reversed: {lo} > {hi}");
    if hi == lo {
        return 0.5;
    }
    let n = (x - lo) / (hi - lo);
    if !(0.0..=1.0).contains(&n) {
        log::warn!("minmax: {x} outside [{lo}, {hi}], clamped");
        return n.clamp(0.0, 1.0);
    }
    n
}

/// Min-max normalize a score family in place of a copy.
pub fn normalize_scores(scores: &[f64]) -> Vec<f64> {
    let lo = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    scores.iter().map(|&s| minmax(s, lo, hi)).collect()
}

pub fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Length weight `1 / (1 + e^-N(c_d))` of document `doc`.
pub fn length_weight(doc: usize, index: &Index) -> f64 {
    let c_d = index.vectors[doc].term_count as f64;
    logistic(minmax(c_d, index.c_min as f64, index.c_max as f64))
}

pub fn rvsm_score(query: &DocumentVector, doc: usize, index: &Index) -> f64 {
    length_weight(doc, index) * vsm_score(query, &index.vectors[doc])
}

/// `Σ cos(q, b) / n_b` over history reports that fixed `path`.
pub fn simi_score(query: &DocumentVector, path: &str, history: &HistorySet<'_>) -> f64 {
    history
        .members()
        .iter()
        .filter(|b| b.fixed(path))
        .map(|b| cosine(query, &b.vector) / b.fixed_count() as f64)
        .sum()
}

/// SimiScore for every indexed document, in document order.
pub fn simi_scores(query: &DocumentVector, index: &Index, history: &HistorySet<'_>) -> Vec<f64> {
    let mut by_path: HashMap<&str, f64> = HashMap::new();
    for b in history.members() {
        let share = cosine(query, &b.vector) / b.fixed_count() as f64;
        for path in &b.fixed_files {
            *by_path.entry(path.as_str()).or_default() += share;
        }
    }
    index
        .paths
        .iter()
        .map(|p| by_path.get(p.as_str()).copied().unwrap_or(0.0))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Technique {
    Vsm,
    Rvsm,
    #[serde(rename = "buglocator")]
    BugLocator,
}

impl Technique {
    pub const ALL: [Technique; 3] = [Technique::Vsm, Technique::Rvsm, Technique::BugLocator];

    pub fn as_str(self) -> &'static str {
        match self {
            Technique::Vsm => "vsm",
            Technique::Rvsm => "rvsm",
            Technique::BugLocator => "buglocator",
        }
    }
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Technique {
    type Err = RankError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "vsm" => Ok(Technique::Vsm),
            "rvsm" => Ok(Technique::Rvsm),
            "buglocator" => Ok(Technique::BugLocator),
            other => Err(RankError::UnknownTechnique(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingEntry {
    pub path: String,
    pub score: f64,
    /// 1-based.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ranking {
    pub query_id: String,
    pub entries: Vec<RankingEntry>,
}

impl Ranking {
    /// 1-based rank of `path`, if ranked.
    pub fn rank_of(&self, path: &str) -> Option<usize> {
        self.entries.iter().find(|e| e.path == path).map(|e| e.rank)
    }

    pub fn paths(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.path.as_str())
    }
}

/// Order by score descending, ties by path ascending; assign ranks from 1.
pub fn sort_ranking<I>(scored: I) -> Vec<RankingEntry>
where
    I: IntoIterator<Item = (String, f64)>,
{
    let mut scored: Vec<(String, f64)> = scored.into_iter().collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    scored
        .into_iter()
        .enumerate()
        .map(|(i, (path, score))| RankingEntry {
            path,
            score,
            rank: i + 1,
        })
        .collect()
}

fn scored(index: &Index, scores: Vec<f64>) -> Vec<RankingEntry> {
    sort_ranking(index.paths.iter().cloned().zip(scores))
}

pub fn vsm_rank(query: &DocumentVector, index: &Index) -> Result<Vec<RankingEntry>, RankError> {
    if index.is_empty() {
        return Err(RankError::EmptyCorpus);
    }
    let scores = index.vectors.iter().map(|d| vsm_score(query, d)).collect();
    Ok(scored(index, scores))
}

pub fn rvsm_rank(query: &DocumentVector, index: &Index) -> Result<Vec<RankingEntry>, RankError> {
    if index.is_empty() {
        return Err(RankError::EmptyCorpus);
    }
    let scores = (0..index.len()).map(|d| rvsm_score(query, d, index)).collect();
    Ok(scored(index, scores))
}

/// BugLocator score for every document, in document order.
pub fn buglocator_scores(
    query: &DocumentVector,
    index: &Index,
    history: &HistorySet<'_>,
    alpha: Alpha,
) -> Vec<f64> {
    let rvsm: Vec<f64> = (0..index.len()).map(|d| rvsm_score(query, d, index)).collect();
    let simi = simi_scores(query, index, history);
    let a = alpha.get();
    normalize_scores(&rvsm)
        .into_iter()
        .zip(normalize_scores(&simi))
        .map(|(r, s)| (1.0 - a) * r + a * s)
        .collect()
}

pub fn buglocator_rank(
    query: &DocumentVector,
    index: &Index,
    history: &HistorySet<'_>,
    alpha: Alpha,
) -> Result<Vec<RankingEntry>, RankError> {
    if index.is_empty() {
        return Err(RankError::EmptyCorpus);
    }
    Ok(scored(index, buglocator_scores(query, index, history, alpha)))
}

/// Ranks files for bug reports with one technique over one index.
pub struct Locator<'a> {
    index: &'a Index,
    history: History,
    technique: Technique,
    alpha: Alpha,
}

impl<'a> Locator<'a> {
    pub fn new(index: &'a Index, technique: Technique) -> Self {
        Self {
            index,
            history: History::empty(),
            technique,
            alpha: Alpha::default(),
        }
    }

    /// Past reports for SimiScore. Each query only sees reports resolved
    /// before it was reported.
    pub fn with_history(mut self, reports: &[BugReport]) -> Self {
        self.history = History::new(reports, self.index);
        self
    }

    pub fn alpha(mut self, alpha: Alpha) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn technique(&self) -> Technique {
        self.technique
    }

    pub fn scores(&self, report: &BugReport) -> Vec<f64> {
        let q = self.index.vectorize_text(&report.query_text());
        match self.technique {
            Technique::Vsm => self.index.vectors.iter().map(|d| vsm_score(&q, d)).collect(),
            Technique::Rvsm => (0..self.index.len()).map(|d| rvsm_score(&q, d, self.index)).collect(),
            Technique::BugLocator => {
                let visible = self.history.before(report.reported_at);
                buglocator_scores(&q, self.index, &visible, self.alpha)
            }
        }
    }

    pub fn locate(&self, report: &BugReport) -> Result<Ranking, RankError> {
        if self.index.is_empty() {
            return Err(RankError::EmptyCorpus);
        }
        Ok(Ranking {
            query_id: report.id.clone(),
            entries: scored(self.index, self.scores(report)),
        })
    }

    /// Rankings for every report, in input order.
    pub fn locate_all(&self, reports: &[BugReport]) -> Result<Vec<Ranking>, RankError> {
        reports.par_iter().map(|r| self.locate(r)).collect()
    }
}

/// Compare two rankings by path order only.
pub fn same_order(a: &[RankingEntry], b: &[RankingEntry]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.path == y.path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_bug_reports;
    use crate::index::{build_index, TokenizerOptions};

    const FRAC_1_SQRT_2: f64 = 0.7071067811865475;
    const LOGISTIC_1: f64 = 0.7310585786300049;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12_f64.max(1e-9 * a.abs().max(b.abs()))
    }

    fn vector(weights: &[(u32, f64)]) -> DocumentVector {
        DocumentVector {
            term_count: weights.len(),
            weights: weights.to_vec(),
            norm: weights.iter().map(|(_, w)| w * w).sum::<f64>().sqrt(),
        }
    }

    fn idx(docs: &[(&str, &str)]) -> Index {
        let opts = TokenizerOptions::default();
        build_index(
            docs.iter()
                .map(|(p, text)| (p.to_string(), crate::index::tokenize(text, &opts))),
            opts,
        )
        .unwrap()
    }

    fn reports(lines: &[serde_json::Value]) -> Vec<BugReport> {
        let text: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
        parse_bug_reports(text.join("\n").as_bytes(), "t").unwrap()
    }

    #[test]
    fn cosine_cases() {
        let v = vector(&[(0, 1.0), (1, 2.0)]);
        assert!(close(cosine(&v, &v), 1.0));
        assert_eq!(cosine(&vector(&[(0, 1.0)]), &vector(&[(1, 1.0)])), 0.0);
        assert!(close(cosine(&vector(&[(0, 1.0), (1, 1.0)]), &vector(&[(0, 1.0)])), FRAC_1_SQRT_2));
        assert_eq!(cosine(&DocumentVector::zero(0), &v), 0.0);
    }

    #[test]
    fn minmax_cases() {
        assert_eq!(minmax(2.0, 2.0, 6.0), 0.0);
        assert_eq!(minmax(6.0, 2.0, 6.0), 1.0);
        assert_eq!(minmax(4.0, 2.0, 6.0), 0.5);
        assert_eq!(minmax(3.0, 3.0, 3.0), 0.5);
        assert_eq!(minmax(9.0, 2.0, 6.0), 1.0);
        assert_eq!(minmax(-1.0, 2.0, 6.0), 0.0);
        assert_eq!(normalize_scores(&[1.0, 1.0]), [0.5, 0.5]);
    }

    #[test]
    fn vsm_identical_text_scores_one() {
        let index = idx(&[("a", "alpha beta gamma"), ("b", "delta epsilon")]);
        let q = index.vectorize_text("alpha beta gamma");
        assert!(close(vsm_score(&q, &index.vectors[0]), 1.0));
        assert_eq!(vsm_score(&q, &index.vectors[1]), 0.0);
        assert_eq!(vsm_score(&DocumentVector::zero(0), &index.vectors[0]), 0.0);
    }

    #[test]
    fn rvsm_weights_by_length() {
        let index = idx(&[("big", "alpha beta gamma delta"), ("small", "alpha zeta")]);
        let q = index.vectorize_text("alpha beta zeta");
        let big = vsm_score(&q, &index.vectors[0]);
        let small = vsm_score(&q, &index.vectors[1]);
        assert!(close(rvsm_score(&q, 0, &index), LOGISTIC_1 * big));
        assert!(close(rvsm_score(&q, 1, &index), 0.5 * small));
        assert!(rvsm_score(&q, 0, &index) < big);
    }

    #[test]
    fn rvsm_prefers_larger_documents_at_equal_vsm() {
        // Same term profile, different lengths → equal cosine.
        let index = idx(&[
            ("long", "alpha beta alpha beta alpha beta"),
            ("short", "alpha beta"),
            ("other", "gamma delta"),
        ]);
        let q = index.vectorize_text("alpha beta");
        let (l, s) = (index.position("long").unwrap(), index.position("short").unwrap());
        assert!(close(vsm_score(&q, &index.vectors[l]), vsm_score(&q, &index.vectors[s])));
        assert!(rvsm_score(&q, l, &index) > rvsm_score(&q, s, &index));
        let ranking = rvsm_rank(&q, &index).unwrap();
        assert_eq!(ranking[0].path, "long");
    }

    #[test]
    fn simi_score_cases() {
        let index = idx(&[("A.java", "parser token stream"), ("B.java", "render window"), ("C.java", "misc")]);
        let past = reports(&[
            serde_json::json!({"id":"old1","summary":"parser token stream","reported_at":"2020-01-01T00:00:00Z","resolved_at":"2020-01-02T00:00:00Z","fixed_files":["A.java"]}),
            serde_json::json!({"id":"old2","summary":"parser token stream","reported_at":"2020-01-01T00:00:00Z","resolved_at":"2020-01-02T00:00:00Z","fixed_files":["A.java","./B.java"]}),
        ]);
        let q = index.vectorize_text("parser token stream");

        assert_eq!(simi_score(&q, "A.java", &HistorySet::default()), 0.0);

        let only_first = History::new(&past[..1], &index);
        assert!(close(simi_score(&q, "A.java", &only_first.all()), 1.0));

        let only_second = History::new(&past[1..], &index);
        assert!(close(simi_score(&q, "A.java", &only_second.all()), 0.5));
        assert!(close(simi_score(&q, "B.java", &only_second.all()), 0.5));
        assert_eq!(simi_score(&q, "C.java", &only_second.all()), 0.0);

        let both = History::new(&past, &index);
        let all = simi_scores(&q, &index, &both.all());
        assert!(close(all[0], 1.5) && close(all[1], 0.5) && all[2] == 0.0);
    }

    #[test]
    fn alpha_bounds() {
        assert!(Alpha::new(0.0).is_ok() && Alpha::new(1.0).is_ok());
        assert_eq!(Alpha::new(1.5), Err(RankError::InvalidAlpha(1.5)));
        assert!(Alpha::new(f64::NAN).is_err());
        assert_eq!(Alpha::default().get(), 0.2);
    }

    #[test]
    fn buglocator_alpha_extremes() {
        let index = idx(&[
            ("A.java", "checkout cart total price"),
            ("B.java", "checkout payment gateway"),
            ("C.java", "cart price discount coupon"),
        ]);
        let past = reports(&[serde_json::json!({
            "id":"old","summary":"coupon discount wrong","reported_at":"2020-01-01T00:00:00Z",
            "resolved_at":"2020-01-02T00:00:00Z","fixed_files":["B.java"]})]);
        let history = History::new(&past, &index);
        let q = index.vectorize_text("coupon discount wrong at checkout");

        let rvsm = rvsm_rank(&q, &index).unwrap();
        let bl0 = buglocator_rank(&q, &index, &history.all(), Alpha::new(0.0).unwrap()).unwrap();
        assert!(same_order(&rvsm, &bl0));

        let bl1 = buglocator_rank(&q, &index, &history.all(), Alpha::new(1.0).unwrap()).unwrap();
        assert_eq!(bl1[0].path, "B.java");
        for e in bl0.iter().chain(&bl1) {
            assert!((0.0..=1.0).contains(&e.score));
        }
    }

    #[test]
    fn ties_break_by_path() {
        let ranking = sort_ranking([("b".to_string(), 1.0), ("a".to_string(), 1.0), ("c".to_string(), 2.0)]);
        let order: Vec<_> = ranking.iter().map(|e| (e.path.as_str(), e.rank)).collect();
        assert_eq!(order, [("c", 1), ("a", 2), ("b", 3)]);
    }

    #[test]
    fn future_reports_are_invisible() {
        let index = idx(&[("A.java", "cache eviction policy"), ("B.java", "cache loader")]);
        let mut all = reports(&[
            serde_json::json!({"id":"q","summary":"cache eviction broken","reported_at":"2021-06-01T00:00:00Z"}),
            serde_json::json!({"id":"past","summary":"cache loader slow","reported_at":"2021-01-01T00:00:00Z","resolved_at":"2021-02-01T00:00:00Z","fixed_files":["B.java"]}),
        ]);
        let locator = Locator::new(&index, Technique::BugLocator).with_history(&all);
        let before = locator.scores(&all[0]);
        all.extend(reports(&[
            serde_json::json!({"id":"future","summary":"cache eviction broken","reported_at":"2021-05-01T00:00:00Z","resolved_at":"2021-06-01T00:00:00Z","fixed_files":["A.java"]}),
        ]));
        let locator = Locator::new(&index, Technique::BugLocator).with_history(&all);
        assert_eq!(locator.scores(&all[0]), before);
    }

    #[test]
    fn empty_index_cannot_rank() {
        let index = Index {
            stats: build_index([("x".to_string(), vec!["a"])], TokenizerOptions::default()).unwrap().stats,
            paths: vec![],
            vectors: vec![],
            c_max: 0,
            c_min: 0,
            tokenizer: TokenizerOptions::default(),
        };
        let q = DocumentVector::zero(0);
        assert_eq!(buglocator_rank(&q, &index, &HistorySet::default(), Alpha::default()), Err(RankError::EmptyCorpus));
    }

    #[test]
    fn technique_names_round_trip() {
        for t in Technique::ALL {
            assert_eq!(t.as_str().parse::<Technique>().unwrap(), t);
        }
        assert!("bm25".parse::<Technique>().is_err());
    }
}
