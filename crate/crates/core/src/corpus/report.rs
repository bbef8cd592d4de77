use std::collections::HashSet;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::{normalize_path, CorpusError};

/// A bug report, used both as a query and as history for later queries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawReport")]
pub struct BugReport {
    pub id: String,
    pub summary: String,
    pub description: String,
    pub reported_at: DateTime<Utc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolved_at: Option<DateTime<Utc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_files: Option<Vec<String>>,
    /// `false` marks a report unrelated to a functional bug.
    pub functional: bool,
}

impl BugReport {
    /// Text used for retrieval: summary, newline, description.
    pub fn query_text(&self) -> String {
        format!("{}\n{}", self.summary, self.description)
    }

    /// Normalized fixed file paths, empty when none were recorded.
    pub fn fixed_paths(&self) -> Vec<String> {
        self.fixed_files
            .iter()
            .flatten()
            .map(|p| normalize_path(p))
            .collect()
    }
}

#[derive(Deserialize)]
struct RawReport {
    id: String,
    summary: String,
    #[serde(default)]
    description: String,
    reported_at: String,
    #[serde(default)]
    resolved_at: Option<String>,
    #[serde(default)]
    fixed_files: Option<Vec<String>>,
    #[serde(default = "default_functional")]
    functional: bool,
}

fn default_functional() -> bool {
    true
}

fn parse_time(field: &str, value: &str) -> Result<DateTime<Utc>, String> {
    DateTime::parse_from_rfc3339(value)
        .map(|t| t.with_timezone(&Utc))
        .map_err(|e| format!("{field}: {value:?} is not an RFC 3339 timestamp ({e})"))
}

impl TryFrom<RawReport> for BugReport {
    type Error = String;

    fn try_from(raw: RawReport) -> Result<Self, Self::Error> {
        if raw.id.is_empty() {
            return Err("id must not be empty".into());
        }
        let reported_at = parse_time("reported_at", &raw.reported_at)?;
        let resolved_at = raw
            .resolved_at
            .as_deref()
            .map(|v| parse_time("resolved_at", v))
            .transpose()?;
        if let Some(resolved) = resolved_at {
            if resolved < reported_at {
                return Err(format!(
                    "resolved_at {} precedes reported_at {}",
                    resolved.to_rfc3339(),
                    reported_at.to_rfc3339()
                ));
            }
        }
        if let Some(files) = &raw.fixed_files {
            if files.iter().any(|f| f.trim().is_empty()) {
                return Err("fixed_files entries must be nonempty".into());
            }
        }
        Ok(BugReport {
            id: raw.id,
            summary: raw.summary,
            description: raw.description,
            reported_at,
            resolved_at,
            fixed_files: raw.fixed_files,
            functional: raw.functional,
        })
    }
}

/// Read a JSON Lines report file.
pub fn load_bug_reports(path: &Path) -> Result<Vec<BugReport>, CorpusError> {
    let file = std::fs::File::open(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_bug_reports(BufReader::new(file), &path.display().to_string())
}

/// Parse JSON Lines reports; `origin` names the input in errors. Blank lines are skipped.
pub fn parse_bug_reports<R: BufRead>(reader: R, origin: &str) -> Result<Vec<BugReport>, CorpusError> {
    let mut reports = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| CorpusError::MalformedReport {
            path: origin.to_string(),
            line: lineno,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let report: BugReport =
            serde_json::from_str(&line).map_err(|e| CorpusError::MalformedReport {
                path: origin.to_string(),
                line: lineno,
                message: e.to_string(),
            })?;
        if !seen.insert(report.id.clone()) {
            return Err(CorpusError::DuplicateReportId(report.id));
        }
        reports.push(report);
    }
    Ok(reports)
}

pub fn write_bug_reports<W: Write>(mut out: W, reports: &[BugReport]) -> std::io::Result<()> {
    for report in reports {
        serde_json::to_writer(&mut out, report)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Vec<BugReport>, CorpusError> {
        parse_bug_reports(s.as_bytes(), "reports.jsonl")
    }

    #[test]
    fn parses_well_formed_lines_in_order() {
        let input = r#"{"id":"B1","summary":"a","reported_at":"2020-01-01T00:00:00Z"}
{"id":"B2","summary":"b","description":"d","reported_at":"2020-01-02T09:00:00+09:00","resolved_at":"2020-01-03T00:00:00Z","fixed_files":["./src/A.java"]}

{"id":"B3","summary":"c","reported_at":"2020-01-04T00:00:00Z","functional":false}
"#;
        let reports = parse(input).unwrap();
        assert_eq!(reports.len(), 3);
        assert_eq!(reports[0].description, "");
        assert!(reports[0].functional);
        assert_eq!(reports[1].reported_at.to_rfc3339(), "2020-01-02T00:00:00+00:00");
        assert_eq!(reports[1].fixed_paths(), ["src/A.java"]);
        assert!(!reports[2].functional);
        assert_eq!(reports[1].query_text(), "b\nd");
    }

    #[test]
    fn missing_id_reports_its_line() {
        let input = "{\"id\":\"B1\",\"summary\":\"a\",\"reported_at\":\"2020-01-01T00:00:00Z\"}\n{\"summary\":\"a\",\"reported_at\":\"2020-01-01T00:00:00Z\"}\n";
        match parse(input).unwrap_err() {
            CorpusError::MalformedReport { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("id"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let line = r#"{"id":"BUG-7","summary":"a","reported_at":"2020-01-01T00:00:00Z"}"#;
        let input = format!("{line}\n{line}\n");
        assert!(matches!(parse(&input).unwrap_err(), CorpusError::DuplicateReportId(id) if id == "BUG-7"));
    }

    #[test]
    fn invariant_violations_are_malformed() {
        for bad in [
            r#"{"id":"B","summary":"a","reported_at":"2020-01-02T00:00:00Z","resolved_at":"2020-01-01T00:00:00Z"}"#,
            r#"{"id":"B","summary":"a","reported_at":"yesterday"}"#,
            r#"{"id":"B","summary":"a","reported_at":"2020-01-01T00:00:00Z","fixed_files":[""]}"#,
            r#"{"id":"","summary":"a","reported_at":"2020-01-01T00:00:00Z"}"#,
        ] {
            assert!(
                matches!(parse(bad), Err(CorpusError::MalformedReport { line: 1, .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn serialized_reports_parse_back() {
        let input = r#"{"id":"B2","summary":"バグ","description":"d","reported_at":"2020-01-02T00:00:00Z","resolved_at":"2020-01-03T00:00:00Z","fixed_files":["src/A.java"]}"#;
        let reports = parse(input).unwrap();
        let mut out = Vec::new();
        write_bug_reports(&mut out, &reports).unwrap();
        let again = parse(std::str::from_utf8(&out).unwrap()).unwrap();
        assert_eq!(reports, again);
    }
}
