use serde::{Deserialize, Serialize};

use super::{CorpusError, Record};

/// Label of the bucket holding records outside every period.
pub const UNASSIGNED: &str = "unassigned";

/// An inclusive range of publication years.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodSpec {
    pub label: String,
    pub start_year: i32,
    pub end_year: i32,
}

impl PeriodSpec {
    pub fn new(label: impl Into<String>, start_year: i32, end_year: i32) -> Self {
        Self {
            label: label.into(),
            start_year,
            end_year,
        }
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.start_year..=self.end_year).contains(&year)
    }
}

/// Checks labels and year ranges: non-empty list, `start <= end`, unique
/// labels that are usable as directory names, pairwise disjoint ranges.
pub fn validate_periods(spec: &[PeriodSpec]) -> Result<(), CorpusError> {
    let bad = |m: String| Err(CorpusError::Config(m));
    if spec.is_empty() {
        return bad("at least one period is required".into());
    }
    for (i, p) in spec.iter().enumerate() {
        if p.label.trim().is_empty() || p.label != p.label.trim() {
            return bad(format!("period {} has an empty or padded label", i + 1));
        }
        if p.label == UNASSIGNED {
            return bad(format!("period label {UNASSIGNED:?} is reserved"));
        }
        if p.label.contains(['/', '\\', '\t', '\n']) || p.label.starts_with('.') {
            return bad(format!("period label {:?} is not a valid directory name", p.label));
        }
        if p.start_year > p.end_year {
            return bad(format!(
                "period {:?} starts after it ends ({} > {})",
                p.label, p.start_year, p.end_year
            ));
        }
        for q in &spec[..i] {
            if q.label == p.label {
                return bad(format!("duplicate period label {:?}", p.label));
            }
            if p.start_year <= q.end_year && q.start_year <= p.end_year {
                return bad(format!("periods {:?} and {:?} overlap", q.label, p.label));
            }
        }
    }
    Ok(())
}

/// Records bucketed by period, in configured order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodSplit {
    pub periods: Vec<(PeriodSpec, Vec<Record>)>,
    pub unassigned: Vec<Record>,
}

impl PeriodSplit {
    /// Bucket by label; [`UNASSIGNED`] names the leftover bucket.
    pub fn get(&self, label: &str) -> Option<&[Record]> {
        if label == UNASSIGNED {
            return Some(&self.unassigned);
        }
        self.periods
            .iter()
            .find(|(p, _)| p.label == label)
            .map(|(_, r)| r.as_slice())
    }
}

/// Assign every record to the period containing its year. Input order is
/// preserved inside each bucket.
pub fn split_periods(records: &[Record], spec: &[PeriodSpec]) -> Result<PeriodSplit, CorpusError> {
    validate_periods(spec)?;
    let mut periods: Vec<(PeriodSpec, Vec<Record>)> = spec.iter().map(|p| (p.clone(), Vec::new())).collect();
    let mut unassigned = Vec::new();
    for r in records {
        match periods.iter_mut().find(|(p, _)| p.contains(r.year)) {
            Some((_, bucket)) => bucket.push(r.clone()),
            None => unassigned.push(r.clone()),
        }
    }
    Ok(PeriodSplit { periods, unassigned })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decades() -> Vec<PeriodSpec> {
        vec![
            PeriodSpec::new("1988-1997", 1988, 1997),
            PeriodSpec::new("1998-2008", 1998, 2008),
        ]
    }

    fn rec(year: i32) -> Record {
        Record {
            id: format!("r{year}"),
            title: "t".into(),
            abstract_text: String::new(),
            year,
            source: "KO".into(),
        }
    }

    #[test]
    fn boundary_years() {
        let split = split_periods(&[rec(1997), rec(1998), rec(2009), rec(1988)], &decades()).unwrap();
        let first: Vec<i32> = split.get("1988-1997").unwrap().iter().map(|r| r.year).collect();
        assert_eq!(first, vec![1997, 1988]);
        assert_eq!(split.get("1998-2008").unwrap()[0].year, 1998);
        assert_eq!(split.get(UNASSIGNED).unwrap()[0].year, 2009);
        assert!(split.get("nope").is_none());
    }

    #[test]
    fn overlap_and_bad_specs_rejected() {
        let overlap = vec![PeriodSpec::new("a", 1990, 2000), PeriodSpec::new("b", 2000, 2005)];
        assert!(matches!(split_periods(&[], &overlap), Err(CorpusError::Config(_))));
        assert!(split_periods(&[], &[]).is_err());
        assert!(split_periods(&[], &[PeriodSpec::new("a", 2000, 1990)]).is_err());
        assert!(split_periods(&[], &[PeriodSpec::new(UNASSIGNED, 1990, 1991)]).is_err());
        let dup = vec![PeriodSpec::new("a", 1990, 1991), PeriodSpec::new("a", 1992, 1993)];
        assert!(split_periods(&[], &dup).is_err());
        assert!(split_periods(&[], &[PeriodSpec::new("a/b", 1990, 1991)]).is_err());
    }
}
