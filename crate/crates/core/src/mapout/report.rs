use serde::{Deserialize, Serialize};

use super::MapError;
use crate::cluster::ClusterGraph;
use crate::corpus::{CorpusStats, PeriodSpec};

pub const REPORT_FORMAT: &str = "topicmap-period-report";
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportCluster {
    pub id: usize,
    pub label: String,
    pub size: usize,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportLink {
    pub source: usize,
    pub target: usize,
    pub count: usize,
}

/// Machine-readable inventory of one period's clusters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodReport {
    pub format: String,
    pub version: u32,
    pub period: PeriodSpec,
    pub corpus_stats: CorpusStats,
    pub clusters: Vec<ReportCluster>,
    pub links: Vec<ReportLink>,
}

impl PeriodReport {
    pub fn new(cg: &ClusterGraph, stats: &CorpusStats, period: &PeriodSpec) -> Result<Self, MapError> {
        if cg.is_empty() {
            return Err(MapError::Empty(format!(
                "period {:?} has no clusters to report",
                period.label
            )));
        }
        let mut clusters: Vec<ReportCluster> = cg
            .clusters()
            .iter()
            .map(|c| ReportCluster {
                id: c.id,
                label: c.label.clone(),
                size: c.size(),
                members: c.members.iter().map(|m| m.canonical().to_string()).collect(),
            })
            .collect();
        clusters.sort_by_key(|c| c.id);
        let links = cg
            .links()
            .iter()
            .map(|(&(source, target), &count)| ReportLink { source, target, count })
            .collect();
        Ok(Self {
            format: REPORT_FORMAT.into(),
            version: REPORT_VERSION,
            period: period.clone(),
            corpus_stats: stats.clone(),
            clusters,
            links,
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, MapError> {
        let report: PeriodReport = serde_json::from_str(text).map_err(|e| MapError::Parse(e.to_string()))?;
        if report.format != REPORT_FORMAT || report.version != REPORT_VERSION {
            return Err(MapError::Parse(format!(
                "expected {REPORT_FORMAT} version {REPORT_VERSION}, found {} version {}",
                report.format, report.version
            )));
        }
        Ok(report)
    }

    pub fn total_size(&self) -> usize {
        self.clusters.iter().map(|c| c.size).sum()
    }
}

/// JSON report for one period.
pub fn write_report(cg: &ClusterGraph, stats: &CorpusStats, period: &PeriodSpec) -> Result<String, MapError> {
    Ok(PeriodReport::new(cg, stats, period)?.to_json())
}
