//! Two-phase clustering of the term graph and the inter-cluster network.
//!
//! Phase one joins terms connected by tight relations. Phase two merges
//! the resulting components preferentially: every cluster nominates the
//! neighbour it is most similar to, and nomination chains are merged.
//! Similarity between clusters A and B is the weighted count of relations
//! crossing them divided by |A|·|B|.

mod graph;
mod merge;
mod weights;

use crate::termex::Term;

pub use graph::{build_cluster_graph, select_for_display, ClusterGraph};
pub use merge::{
    cluster_terms, label_cluster, label_partition, merge_components, merge_steps, tight_components, Component,
};
pub use weights::RelationWeights;

/// A labeled topic cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    /// 1-based, assigned in label order within one run.
    pub id: usize,
    /// Canonical text of the representative member.
    pub label: String,
    /// Members in canonical order.
    pub members: Vec<Term>,
}

impl Cluster {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::termex::{TermIndex, TermStats};
    use crate::variants::{RelationKind, TermGraph, VariantRelation};

    fn t(s: &str) -> Term {
        Term::parse(s).unwrap()
    }

    fn graph(terms: &[(&str, usize)], edges: &[(&str, &str, RelationKind)]) -> TermGraph {
        let index = TermIndex::from_entries(terms.iter().map(|(s, df)| {
            (
                t(s),
                TermStats {
                    freq: *df,
                    docs: (0..*df).map(|i| format!("d{i}")).collect(),
                },
            )
        }))
        .unwrap();
        let edges = edges
            .iter()
            .map(|(a, b, k)| VariantRelation::new(t(a), t(b), *k).unwrap());
        TermGraph::new(index, edges).unwrap()
    }

    fn canon(g: &TermGraph, parts: &[Component]) -> Vec<Vec<String>> {
        parts
            .iter()
            .map(|p| p.iter().map(|&i| g.terms()[i].canonical().to_string()).collect())
            .collect()
    }

    #[test]
    fn modifier_expansion_is_tight() {
        let g = graph(
            &[("classification scheme", 1), ("universal classification scheme", 1)],
            &[(
                "classification scheme",
                "universal classification scheme",
                RelationKind::ModifierExpansion,
            )],
        );
        let comps = tight_components(&g, &RelationWeights::default());
        assert_eq!(comps, vec![vec![0, 1]]);
    }

    #[test]
    fn no_tight_edges_means_singletons() {
        let g = graph(
            &[("knowledge organization", 1), ("knowledge organization system", 1)],
            &[(
                "knowledge organization",
                "knowledge organization system",
                RelationKind::HeadExpansion,
            )],
        );
        assert_eq!(tight_components(&g, &RelationWeights::default()).len(), 2);
    }

    #[test]
    fn single_substitution_link_merges_at_zero_threshold() {
        let g = graph(
            &[("knowledge organization system", 1), ("knowledge organization tool", 1)],
            &[(
                "knowledge organization system",
                "knowledge organization tool",
                RelationKind::HeadSubstitution,
            )],
        );
        let w = RelationWeights {
            merge_threshold: 0.0,
            ..RelationWeights::default()
        };
        let comps = tight_components(&g, &w);
        let steps = merge_steps(&comps, &g, &w);
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[1].len(), 1);
        let clusters = merge_components(&comps, &g, &w);
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].id, 1);
        assert_eq!(clusters[0].size(), 2);
    }

    #[test]
    fn unreachable_threshold_is_a_no_op() {
        let g = graph(
            &[("a x", 1), ("b x", 1), ("c x", 1)],
            &[
                ("a x", "b x", RelationKind::HeadSubstitution),
                ("b x", "c x", RelationKind::HeadSubstitution),
            ],
        );
        let w = RelationWeights {
            merge_threshold: 1e9,
            ..RelationWeights::default()
        };
        let comps = tight_components(&g, &w);
        let clusters = merge_components(&comps, &g, &w);
        assert_eq!(clusters.len(), 3);
    }

    #[test]
    fn label_prefers_in_cluster_degree() {
        let g = graph(
            &[
                ("knowledge organization", 1),
                ("knowledge organization system", 5),
                ("knowledge organization tool", 5),
            ],
            &[
                (
                    "knowledge organization",
                    "knowledge organization system",
                    RelationKind::HeadExpansion,
                ),
                (
                    "knowledge organization",
                    "knowledge organization tool",
                    RelationKind::HeadExpansion,
                ),
            ],
        );
        let w = RelationWeights::default();
        let label = label_cluster(&[0, 1, 2], &g, &w);
        assert_eq!(g.terms()[label].canonical(), "knowledge organization");
        assert_eq!(label_cluster(&[1], &g, &w), 1);
        // without edges the document frequency decides
        assert_eq!(label_cluster(&[1, 2], &g, &w), 1);
    }

    #[test]
    fn nomination_ties_go_to_smallest_label() {
        // "m x" is equally similar to "a x" and "z x"; both of those prefer
        // their heavier partner, so only the tie-break decides where m goes.
        let g = graph(
            &[("a x", 1), ("a2 x", 1), ("m x", 1), ("z x", 1), ("z2 x", 1)],
            &[
                ("a x", "m x", RelationKind::HeadSubstitution),
                ("m x", "z x", RelationKind::HeadSubstitution),
                ("a x", "a2 x", RelationKind::ModifierSubstitution),
                ("z x", "z2 x", RelationKind::ModifierSubstitution),
            ],
        );
        let mut w = RelationWeights {
            tight_kinds: [RelationKind::Spelling].into(),
            max_iterations: 1,
            ..RelationWeights::default()
        };
        w.weight.insert(RelationKind::ModifierSubstitution, 5.0);
        let steps = merge_steps(&tight_components(&g, &w), &g, &w);
        assert_eq!(
            canon(&g, &steps[1]),
            vec![vec!["a x", "a2 x", "m x"], vec!["z x", "z2 x"]]
        );
    }

    #[test]
    fn cluster_graph_counts_crossing_edges() {
        let g = graph(
            &[("a x", 1), ("a y", 1), ("b x", 1), ("b y", 1)],
            &[
                ("a x", "a y", RelationKind::HeadSubstitution),
                ("a x", "b x", RelationKind::ModifierSubstitution),
                ("a y", "b y", RelationKind::ModifierSubstitution),
                ("b x", "b y", RelationKind::HeadSubstitution),
            ],
        );
        let parts = vec![vec![0, 1], vec![2, 3]];
        let clusters = label_partition(&parts, &g, &RelationWeights::default());
        let cg = build_cluster_graph(clusters.clone(), &g).unwrap();
        assert_eq!(cg.links().values().copied().collect::<Vec<_>>(), [2]);
        assert!(build_cluster_graph(clusters[..1].to_vec(), &g).is_err());
        let all = label_partition(&[vec![0, 1, 2, 3]], &g, &RelationWeights::default());
        assert!(build_cluster_graph(all, &g).unwrap().links().is_empty());
    }

    fn fake(id: usize, label: &str, size: usize) -> Cluster {
        let mut members = vec![t(label)];
        members.extend((1..size).map(|i| t(&format!("{label} m{i}"))));
        members.sort();
        Cluster {
            id,
            label: label.into(),
            members,
        }
    }

    #[test]
    fn display_selection() {
        let clusters = vec![fake(1, "a", 9), fake(2, "b", 5), fake(3, "c", 5), fake(4, "d", 1)];
        let links = [((1, 2), 1), ((2, 4), 3)].into();
        let cg = ClusterGraph::new(clusters, links).unwrap();
        let sel = select_for_display(&cg, 3, 2);
        let ids: Vec<usize> = sel.clusters().iter().map(|c| c.id).collect();
        assert_eq!(ids, [1, 2, 3]);
        assert_eq!(sel.links().len(), 1);
        assert_eq!(select_for_display(&cg, 10, 1), cg);
        // size ties go to the better-linked cluster
        assert_eq!(select_for_display(&cg, 2, 2).clusters()[1].label, "b");
    }

    #[test]
    fn components_of_link_network() {
        let clusters = vec![fake(1, "a", 1), fake(2, "b", 1), fake(3, "c", 4), fake(4, "d", 1)];
        let cg = ClusterGraph::new(clusters, [((1, 2), 1), ((2, 4), 2)].into()).unwrap();
        assert_eq!(cg.components(), vec![vec![1, 2, 4], vec![3]]);
    }
}
