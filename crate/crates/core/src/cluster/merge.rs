use std::cmp::{Ordering, Reverse};
use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use super::weights::RelationWeights;
use super::Cluster;
use crate::variants::{RelationKind, TermGraph};

/// A set of term ids (positions in [`TermGraph::terms`]), sorted.
pub type Component = Vec<usize>;

struct Adjacency {
    nbrs: Vec<Vec<(usize, RelationKind)>>,
}

impl Adjacency {
    fn new(g: &TermGraph) -> Self {
        let mut nbrs = vec![Vec::new(); g.term_count()];
        for &(a, b, kind) in g.edge_ids() {
            nbrs[a].push((b, kind));
            nbrs[b].push((a, kind));
        }
        Self { nbrs }
    }
}

fn kind_slot(kind: RelationKind) -> usize {
    RelationKind::ALL.iter().position(|&k| k == kind).unwrap_or(0)
}

fn sort_partition(mut parts: Vec<Component>) -> Vec<Component> {
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort_unstable_by_key(|p| p.first().copied());
    parts
}

/// Connected components over edges whose kind is tight. Isolated terms
/// form singleton components. Components are sorted, and ordered by their
/// smallest term id.
pub fn tight_components(g: &TermGraph, w: &RelationWeights) -> Vec<Component> {
    let n = g.term_count();
    let mut nbrs = vec![Vec::new(); n];
    for &(a, b, kind) in g.edge_ids() {
        if w.tight_kinds.contains(&kind) {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
    }
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &nbrs[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        parts.push(comp);
    }
    sort_partition(parts)
}

fn label_in(adj: &Adjacency, members: &[usize], cluster_of: &[usize], g: &TermGraph, w: &RelationWeights) -> usize {
    let own = cluster_of[members[0]];
    let degree = |t: usize| -> f64 {
        adj.nbrs[t]
            .iter()
            .filter(|(u, _)| cluster_of[*u] == own)
            .map(|(_, k)| w.weight_of(*k))
            .sum()
    };
    let terms = g.terms();
    let index = g.index();
    members
        .iter()
        .map(|&t| (t, degree(t)))
        .max_by(|(x, dx), (y, dy)| {
            dx.partial_cmp(dy)
                .unwrap_or(Ordering::Equal)
                .then_with(|| index.doc_freq(&terms[*x]).cmp(&index.doc_freq(&terms[*y])))
                .then_with(|| terms[*y].len().cmp(&terms[*x].len()))
                .then_with(|| terms[*y].cmp(&terms[*x]))
        })
        .map(|(t, _)| t)
        .expect("clusters are non-empty")
}

/// Label for a set of terms: the member with the highest weighted degree
/// inside the set, then the highest document frequency, then the fewest
/// tokens, then the canonically smallest text. Returns a term id.
pub fn label_cluster(members: &[usize], g: &TermGraph, w: &RelationWeights) -> usize {
    assert!(!members.is_empty(), "cannot label an empty cluster");
    let adj = Adjacency::new(g);
    let mut cluster_of = vec![usize::MAX; g.term_count()];
    for &m in members {
        cluster_of[m] = 0;
    }
    label_in(&adj, members, &cluster_of, g, w)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// One preferential-merge iteration. Returns `None` when no cluster
/// nominates a neighbour.
fn merge_once(parts: &[Component], adj: &Adjacency, g: &TermGraph, w: &RelationWeights) -> Option<Vec<Component>> {
    let mut cluster_of = vec![0; g.term_count()];
    for (c, p) in parts.iter().enumerate() {
        for &t in p {
            cluster_of[t] = c;
        }
    }
    let labels: Vec<usize> = parts.par_iter().map(|p| label_in(adj, p, &cluster_of, g, w)).collect();

    let mut counts: HashMap<(usize, usize), [u32; 6]> = HashMap::new();
    for &(a, b, kind) in g.edge_ids() {
        let (ca, cb) = (cluster_of[a], cluster_of[b]);
        if ca != cb {
            counts.entry((ca.min(cb), ca.max(cb))).or_default()[kind_slot(kind)] += 1;
        }
    }
    let mut nbrs: Vec<Vec<(usize, f64)>> = vec![Vec::new(); parts.len()];
    for (&(ca, cb), per_kind) in &counts {
        let total: f64 = RelationKind::ALL
            .iter()
            .zip(per_kind)
            .map(|(&k, &n)| f64::from(n) * w.weight_of(k))
            .sum();
        let sim = total / (parts[ca].len() as f64 * parts[cb].len() as f64);
        nbrs[ca].push((cb, sim));
        nbrs[cb].push((ca, sim));
    }

    let terms = g.terms();
    let nominations: Vec<Option<usize>> = nbrs
        .par_iter()
        .map(|list| {
            list.iter()
                .filter(|(_, s)| *s > w.merge_threshold)
                .max_by(|(x, sx), (y, sy)| {
                    sx.partial_cmp(sy)
                        .unwrap_or(Ordering::Equal)
                        .then_with(|| Reverse(&terms[labels[*x]]).cmp(&Reverse(&terms[labels[*y]])))
                })
                .map(|(c, _)| *c)
        })
        .collect();
    if nominations.iter().all(Option::is_none) {
        return None;
    }

    let mut uf = UnionFind::new(parts.len());
    for (c, nom) in nominations.iter().enumerate() {
        if let Some(d) = nom {
            uf.union(c, *d);
        }
    }
    let mut groups: Vec<Component> = vec![Vec::new(); parts.len()];
    for (c, p) in parts.iter().enumerate() {
        let root = uf.find(c);
        groups[root].extend_from_slice(p);
    }
    groups.retain(|g| !g.is_empty());
    Some(sort_partition(groups))
}

/// Every partition visited by preferential merging, starting with the
/// input components and ending with the final partition.
pub fn merge_steps(components: &[Component], g: &TermGraph, w: &RelationWeights) -> Vec<Vec<Component>> {
    let adj = Adjacency::new(g);
    let mut steps = vec![sort_partition(components.to_vec())];
    for _ in 0..w.max_iterations {
        let current = steps.last().expect("at least the input partition");
        match merge_once(current, &adj, g, w) {
            Some(next) => steps.push(next),
            None => break,
        }
    }
    steps
}

/// Turn a partition of term ids into labeled clusters, numbered from 1 in
/// label order.
pub fn label_partition(parts: &[Component], g: &TermGraph, w: &RelationWeights) -> Vec<Cluster> {
    let adj = Adjacency::new(g);
    let mut cluster_of = vec![0; g.term_count()];
    for (c, p) in parts.iter().enumerate() {
        for &t in p {
            cluster_of[t] = c;
        }
    }
    let terms = g.terms();
    let mut labeled: Vec<(usize, &Component)> = parts
        .par_iter()
        .map(|p| (label_in(&adj, p, &cluster_of, g, w), p))
        .collect();
    labeled.sort_by(|(la, pa), (lb, pb)| terms[*la].cmp(&terms[*lb]).then_with(|| pa.cmp(pb)));
    labeled
        .into_iter()
        .enumerate()
        .map(|(i, (label, p))| Cluster {
            id: i + 1,
            label: terms[label].canonical().to_string(),
            members: p.iter().map(|&t| terms[t].clone()).collect(),
        })
        .collect()
}

/// Preferential merging of `components` into labeled clusters.
pub fn merge_components(components: &[Component], g: &TermGraph, w: &RelationWeights) -> Vec<Cluster> {
    let steps = merge_steps(components, g, w);
    label_partition(steps.last().expect("at least the input partition"), g, w)
}

/// Both clustering phases with the given parameters.
pub fn cluster_terms(g: &TermGraph, w: &RelationWeights) -> Vec<Cluster> {
    merge_components(&tight_components(g, w), g, w)
}
