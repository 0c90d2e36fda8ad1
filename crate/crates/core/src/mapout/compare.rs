use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::report::PeriodReport;
use super::MapError;

pub const COMPARISON_FORMAT: &str = "topicmap-comparison";
pub const COMPARISON_VERSION: u32 = 1;

/// Topic labels that persist, appear or disappear between two periods.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonReport {
    pub format: String,
    pub version: u32,
    pub period_1: String,
    pub period_2: String,
    /// In both periods, largest first.
    pub persistent: Vec<String>,
    /// Only in the second period, largest first.
    pub emergent: Vec<String>,
    /// Only in the first period, largest first.
    pub vanished: Vec<String>,
    /// Persistent label → (size in period 1, size in period 2).
    pub size_deltas: BTreeMap<String, (usize, usize)>,
}

impl ComparisonReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("comparison serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, MapError> {
        let r: ComparisonReport = serde_json::from_str(text).map_err(|e| MapError::Parse(e.to_string()))?;
        if r.format != COMPARISON_FORMAT || r.version != COMPARISON_VERSION {
            return Err(MapError::Parse(format!(
                "expected {COMPARISON_FORMAT} version {COMPARISON_VERSION}, found {} version {}",
                r.format, r.version
            )));
        }
        Ok(r)
    }
}

fn sizes_by_label(r: &PeriodReport) -> BTreeMap<String, usize> {
    let mut sizes = BTreeMap::new();
    for c in &r.clusters {
        *sizes.entry(c.label.trim().to_lowercase()).or_insert(0) += c.size;
    }
    sizes
}

fn by_size_desc(mut labels: Vec<(String, usize)>) -> Vec<String> {
    labels.sort_by(|(la, sa), (lb, sb)| sb.cmp(sa).then_with(|| la.cmp(lb)));
    labels.into_iter().map(|(l, _)| l).collect()
}

/// Match cluster labels across two period reports.
pub fn compare_periods(r1: &PeriodReport, r2: &PeriodReport) -> Result<ComparisonReport, MapError> {
    if r1.period.label == r2.period.label {
        return Err(MapError::Config(format!(
            "cannot compare period {:?} with itself",
            r1.period.label
        )));
    }
    let s1 = sizes_by_label(r1);
    let s2 = sizes_by_label(r2);
    let mut persistent = Vec::new();
    let mut vanished = Vec::new();
    let mut size_deltas = BTreeMap::new();
    for (label, &a) in &s1 {
        match s2.get(label) {
            Some(&b) => {
                persistent.push(label.clone());
                size_deltas.insert(label.clone(), (a, b));
            }
            None => vanished.push((label.clone(), a)),
        }
    }
    let emergent: Vec<(String, usize)> = s2
        .iter()
        .filter(|(l, _)| !s1.contains_key(*l))
        .map(|(l, &b)| (l.clone(), b))
        .collect();
    persistent.sort_by(|x, y| {
        let (a1, b1) = size_deltas[x];
        let (a2, b2) = size_deltas[y];
        a2.max(b2)
            .cmp(&a1.max(b1))
            .then_with(|| (a2 + b2).cmp(&(a1 + b1)))
            .then_with(|| x.cmp(y))
    });
    Ok(ComparisonReport {
        format: COMPARISON_FORMAT.into(),
        version: COMPARISON_VERSION,
        period_1: r1.period.label.clone(),
        period_2: r2.period.label.clone(),
        persistent,
        emergent: by_size_desc(emergent),
        vanished: by_size_desc(vanished),
        size_deltas,
    })
}
