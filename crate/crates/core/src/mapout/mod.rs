//! Map and report writers: Pajek, GraphML, JSON period reports and
//! cross-period comparison.

mod compare;
mod graphml;
mod pajek;
mod report;

use thiserror::Error;

pub use compare::{compare_periods, ComparisonReport, COMPARISON_FORMAT, COMPARISON_VERSION};
pub use graphml::write_graphml;
pub use pajek::{write_pajek, CluMode, PajekFiles};
pub use report::{write_report, PeriodReport, ReportCluster, ReportLink, REPORT_FORMAT, REPORT_VERSION};

#[derive(Debug, Error)]
pub enum MapError {
    #[error("{0}")]
    Empty(String),
    #[error("{0}")]
    Config(String),
    #[error("malformed report: {0}")]
    Parse(String),
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::cluster::{Cluster, ClusterGraph};
    use crate::corpus::{CorpusStats, PeriodSpec};
    use crate::termex::Term;

    fn cluster(id: usize, label: &str, size: usize) -> Cluster {
        let mut members = vec![Term::parse(label).unwrap()];
        members.extend((1..size).map(|i| Term::parse(&format!("{label} x{i}")).unwrap()));
        members.sort();
        Cluster {
            id,
            label: label.into(),
            members,
        }
    }

    fn two() -> ClusterGraph {
        ClusterGraph::new(
            vec![cluster(1, "classification", 3), cluster(2, "knowledge organization", 5)],
            [((1, 2), 2)].into(),
        )
        .unwrap()
    }

    #[test]
    fn pajek_two_clusters() {
        let files = write_pajek(&two(), CluMode::Singleton).unwrap();
        assert_eq!(
            files.net,
            "*Vertices 2\n1 \"classification\"\n2 \"knowledge organization\"\n*Edges\n1 2 2\n"
        );
        assert_eq!(files.vec, "*Vertices 2\n3\n5\n");
        assert_eq!(files.clu, "*Vertices 2\n1\n2\n");
        let comp = write_pajek(&two(), CluMode::Component).unwrap();
        assert_eq!(comp.clu, "*Vertices 2\n1\n1\n");
    }

    #[test]
    fn pajek_doubles_quotes_and_rejects_empty() {
        let mut c = cluster(1, "x", 1);
        c.label = "say \"x\"".into();
        c.members = vec![Term::parse("say \"x\"").unwrap()];
        let cg = ClusterGraph::new(vec![c], BTreeMap::new()).unwrap();
        assert!(write_pajek(&cg, CluMode::Singleton)
            .unwrap()
            .net
            .contains("1 \"say \"\"x\"\"\"\n"));
        let empty = ClusterGraph::new(vec![], BTreeMap::new()).unwrap();
        assert!(write_pajek(&empty, CluMode::Singleton).is_err());
    }

    #[test]
    fn report_round_trip_and_empty() {
        let p = PeriodSpec::new("1988-1997", 1988, 1997);
        let text = write_report(&two(), &CorpusStats::default(), &p).unwrap();
        let back = PeriodReport::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.total_size(), 8);
        let empty = ClusterGraph::new(vec![], BTreeMap::new()).unwrap();
        assert!(write_report(&empty, &CorpusStats::default(), &p).is_err());
        assert!(PeriodReport::from_json(&text.replace("\"version\": 1", "\"version\": 2")).is_err());
    }

    fn report(label: &str, clusters: &[(&str, usize)]) -> PeriodReport {
        let cs = clusters
            .iter()
            .enumerate()
            .map(|(i, (l, s))| cluster(i + 1, l, *s))
            .collect();
        let cg = ClusterGraph::new(cs, BTreeMap::new()).unwrap();
        PeriodReport::new(&cg, &CorpusStats::default(), &PeriodSpec::new(label, 1, 2)).unwrap()
    }

    #[test]
    fn comparison_sets() {
        let r1 = report("p1", &[("classification", 9), ("thesaurus", 4), ("indexing", 2)]);
        let r2 = report(
            "p2",
            &[("classification", 12), ("metadata", 6), ("web", 7), ("indexing", 2)],
        );
        let c = compare_periods(&r1, &r2).unwrap();
        assert_eq!(c.persistent, ["classification", "indexing"]);
        assert_eq!(c.emergent, ["web", "metadata"]);
        assert_eq!(c.vanished, ["thesaurus"]);
        assert_eq!(c.size_deltas["classification"], (9, 12));
        assert!(compare_periods(&r1, &r1).is_err());
        let back = ComparisonReport::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }
}
