//! Bibliographic records: parsing, validation, period splitting and counts.

mod isi;
mod jsonl;
mod period;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use isi::{parse_isi, write_isi};
pub use jsonl::{parse_jsonl, write_jsonl};
pub use period::{split_periods, validate_periods, PeriodSpec, PeriodSplit, UNASSIGNED};

/// Lowest publication year accepted for a record.
pub const MIN_YEAR: i32 = 1800;
/// Highest publication year accepted for a record.
pub const MAX_YEAR: i32 = 2100;

/// One bibliographic record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub title: String,
    #[serde(rename = "abstract", default)]
    pub abstract_text: String,
    pub year: i32,
    pub source: String,
}

impl Record {
    /// Title and abstract joined into a single analysis text, title first,
    /// separated by a sentence boundary.
    pub fn analysis_text(&self) -> String {
        let title = self.title.trim();
        let abstract_text = self.abstract_text.trim();
        if abstract_text.is_empty() {
            return title.to_string();
        }
        let closed = title.ends_with(['.', '?', '!', ';']);
        let mut text = String::with_capacity(title.len() + abstract_text.len() + 2);
        text.push_str(title);
        if !closed {
            text.push('.');
        }
        text.push(' ');
        text.push_str(abstract_text);
        text
    }
}

/// Why a record block was dropped while parsing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipWarning {
    /// 1-based line where the record starts.
    pub line: usize,
    pub message: String,
}

/// Result of parsing a record stream.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedCorpus {
    pub records: Vec<Record>,
    /// Number of record blocks dropped (missing title or year, bad year,
    /// duplicate id).
    pub skipped: usize,
    pub warnings: Vec<SkipWarning>,
}

impl ParsedCorpus {
    fn skip(&mut self, line: usize, message: impl Into<String>) {
        self.skipped += 1;
        self.warnings.push(SkipWarning {
            line,
            message: message.into(),
        });
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid period configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Record counts for a corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub record_count: usize,
    pub per_source_counts: BTreeMap<String, usize>,
    pub per_year_counts: BTreeMap<i32, usize>,
}

pub fn corpus_stats(records: &[Record]) -> CorpusStats {
    let mut stats = CorpusStats {
        record_count: records.len(),
        ..CorpusStats::default()
    };
    for r in records {
        *stats.per_source_counts.entry(r.source.clone()).or_default() += 1;
        *stats.per_year_counts.entry(r.year).or_default() += 1;
    }
    stats
}

/// Shared validation for both input formats. Returns the reason a record
/// must be skipped, if any.
fn check_fields(title: Option<&str>, year: Option<&str>) -> Result<(String, i32), String> {
    let title = title.map(str::trim).unwrap_or("");
    if title.is_empty() {
        return Err("missing title".into());
    }
    let year_text = match year.map(str::trim) {
        Some(y) if !y.is_empty() => y,
        _ => return Err("missing publication year".into()),
    };
    let year: i32 = year_text
        .parse()
        .map_err(|_| format!("unparseable publication year {year_text:?}"))?;
    if !(MIN_YEAR..=MAX_YEAR).contains(&year) {
        return Err(format!("publication year {year} outside {MIN_YEAR}..={MAX_YEAR}"));
    }
    Ok((title.to_string(), year))
}

fn generated_id(ordinal: usize) -> String {
    format!("rec-{ordinal:06}")
}
