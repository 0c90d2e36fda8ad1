use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::detect::{classify, spelling_key};
use super::kind::{RelationKind, VariantRelation};
use super::synlex::SynLex;
use crate::termex::{Term, TermIndex};

/// Which relation kinds build_graph keeps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationConfig {
    pub enabled: BTreeSet<RelationKind>,
}

impl Default for RelationConfig {
    fn default() -> Self {
        Self {
            enabled: RelationKind::ALL.into_iter().collect(),
        }
    }
}

/// Indexed terms and the variation edges between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermGraph {
    index: TermIndex,
    terms: Vec<Term>,
    edges: Vec<VariantRelation>,
    edge_ids: Vec<(usize, usize, RelationKind)>,
}

impl TermGraph {
    /// Assemble a graph, sorting edges into canonical order. Fails when an
    /// endpoint is not indexed, an edge is a loop, a symmetric edge is not
    /// stored in canonical order, or a pair carries the same kind twice.
    pub fn new(index: TermIndex, edges: impl IntoIterator<Item = VariantRelation>) -> Result<Self, String> {
        let terms: Vec<Term> = index.terms().cloned().collect();
        let mut edges: Vec<VariantRelation> = edges.into_iter().collect();
        edges.sort();
        let mut seen = HashSet::new();
        let mut edge_ids = Vec::with_capacity(edges.len());
        for e in &edges {
            let pos = |t: &Term| {
                terms
                    .binary_search(t)
                    .map_err(|_| format!("edge endpoint {:?} is not an indexed term", t.canonical()))
            };
            let (i, j) = (pos(&e.a)?, pos(&e.b)?);
            if i == j {
                return Err(format!("loop on {:?}", e.a.canonical()));
            }
            if !e.kind.is_directed() && j < i {
                return Err(format!("{} edge {} not in canonical order", e.kind, e));
            }
            if !seen.insert((i.min(j), i.max(j), e.kind)) {
                return Err(format!(
                    "duplicate {} edge between {:?} and {:?}",
                    e.kind,
                    e.a.canonical(),
                    e.b.canonical()
                ));
            }
            edge_ids.push((i, j, e.kind));
        }
        Ok(Self {
            index,
            terms,
            edges,
            edge_ids,
        })
    }

    pub fn index(&self) -> &TermIndex {
        &self.index
    }

    /// Terms in canonical order; positions in this slice are the term ids
    /// used by [`TermGraph::edge_ids`].
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term_id(&self, term: &Term) -> Option<usize> {
        self.terms.binary_search(term).ok()
    }

    /// Edges sorted by `(a, b, kind)`.
    pub fn edges(&self) -> &[VariantRelation] {
        &self.edges
    }

    /// Edges as `(id of a, id of b, kind)`, parallel to [`TermGraph::edges`].
    pub fn edge_ids(&self) -> &[(usize, usize, RelationKind)] {
        &self.edge_ids
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Candidate partners for every term: pairs sharing a word, pairs with
/// the same spelling key, and single words sharing a synset. Any pair the
/// detectors can relate is in this set; `candidates[i]` holds only `j > i`.
fn candidate_pairs(terms: &[Term], syn: &SynLex) -> Vec<Vec<usize>> {
    let mut by_word: HashMap<&str, Vec<usize>> = HashMap::new();
    let keys: Vec<String> = terms.iter().map(spelling_key).collect();
    let mut by_key: HashMap<&str, Vec<usize>> = HashMap::new();
    let mut by_synset: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, t) in terms.iter().enumerate() {
        let words: BTreeSet<&str> = t.tokens().iter().map(String::as_str).collect();
        for w in words {
            by_word.entry(w).or_default().push(i);
        }
        by_key.entry(&keys[i]).or_default().push(i);
        if t.is_single_word() {
            for &s in syn.synsets_of(t.head_word()).into_iter().flatten() {
                by_synset.entry(s).or_default().push(i);
            }
        }
    }

    (0..terms.len())
        .into_par_iter()
        .map(|i| {
            let t = &terms[i];
            let mut out: Vec<usize> = Vec::new();
            let mut push_all = |list: &[usize]| out.extend(list.iter().copied().filter(|&j| j > i));
            let words: BTreeSet<&str> = t.tokens().iter().map(String::as_str).collect();
            for w in words {
                push_all(&by_word[w]);
            }
            push_all(&by_key[keys[i].as_str()]);
            if t.is_single_word() {
                for s in syn.synsets_of(t.head_word()).into_iter().flatten() {
                    push_all(&by_synset[s]);
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect()
}

/// Detect relations among all indexed terms.
///
/// Each pair is classified once (see [`classify`]); edges whose kind is
/// disabled in `cfg` are dropped. The result does not depend on the
/// size of the rayon pool.
pub fn build_graph(index: &TermIndex, syn: &SynLex, cfg: &RelationConfig) -> TermGraph {
    let terms: Vec<Term> = index.terms().cloned().collect();
    let candidates = candidate_pairs(&terms, syn);
    let edges: Vec<VariantRelation> = candidates
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, js)| {
            let terms = &terms;
            js.iter().filter_map(move |&j| classify(&terms[i], &terms[j], syn))
        })
        .filter(|r| cfg.enabled.contains(&r.kind))
        .collect();
    TermGraph::new(index.clone(), edges).expect("detected edges are valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::termex::TermStats;

    fn index(terms: &[&str]) -> TermIndex {
        TermIndex::from_entries(terms.iter().map(|s| {
            (
                Term::parse(s).unwrap(),
                TermStats {
                    freq: 1,
                    docs: ["d".to_string()].into(),
                },
            )
        }))
        .unwrap()
    }

    #[test]
    fn worked_pair_gives_one_edge() {
        let g = build_graph(
            &index(&["classification scheme", "universal classification scheme"]),
            &SynLex::default(),
            &RelationConfig::default(),
        );
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].kind, RelationKind::ModifierExpansion);
        assert_eq!(g.edge_ids()[0], (0, 1, RelationKind::ModifierExpansion));
    }

    #[test]
    fn single_term_has_no_edges() {
        let g = build_graph(&index(&["thesaurus"]), &SynLex::bundled(), &RelationConfig::default());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn disabled_kinds_are_dropped() {
        let cfg = RelationConfig {
            enabled: [RelationKind::HeadExpansion].into(),
        };
        let g = build_graph(
            &index(&[
                "classification scheme",
                "universal classification scheme",
                "classification scheme design",
            ]),
            &SynLex::default(),
            &cfg,
        );
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].b.canonical(), "classification scheme design");
    }

    #[test]
    fn non_word_sharing_pairs_are_found() {
        let syn = SynLex::from_sets([["taxonomy", "classification"]]);
        let g = build_graph(
            &index(&["data base", "database", "taxonomy", "classification"]),
            &syn,
            &RelationConfig::default(),
        );
        let kinds: Vec<RelationKind> = g.edges().iter().map(|e| e.kind).collect();
        assert_eq!(kinds, [RelationKind::Synonymy, RelationKind::Spelling]);
    }

    #[test]
    fn graph_rejects_bad_edges() {
        let idx = index(&["a b", "c b"]);
        let a = Term::parse("a b").unwrap();
        let c = Term::parse("c b").unwrap();
        let x = Term::parse("x").unwrap();
        let bad_order = VariantRelation {
            a: c.clone(),
            b: a.clone(),
            kind: RelationKind::HeadSubstitution,
        };
        assert!(TermGraph::new(idx.clone(), [bad_order]).is_err());
        let missing = VariantRelation::new(a.clone(), x, RelationKind::HeadExpansion).unwrap();
        assert!(TermGraph::new(idx.clone(), [missing]).is_err());
        let e = VariantRelation::new(a, c, RelationKind::ModifierSubstitution).unwrap();
        assert!(TermGraph::new(idx, [e.clone(), e]).is_err());
    }
}
