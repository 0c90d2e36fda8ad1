use std::collections::{BTreeMap, HashMap, VecDeque};

use super::Cluster;
use crate::termex::Term;
use crate::variants::TermGraph;

/// Clusters and the number of term relations between each pair of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterGraph {
    clusters: Vec<Cluster>,
    links: BTreeMap<(usize, usize), usize>,
}

impl ClusterGraph {
    /// Clusters are stored in label order. Links are keyed by cluster id
    /// with the smaller id first; both ids must exist and counts must be
    /// positive.
    pub fn new(mut clusters: Vec<Cluster>, links: BTreeMap<(usize, usize), usize>) -> Result<Self, String> {
        clusters.sort_by(|a, b| a.label.cmp(&b.label).then_with(|| a.id.cmp(&b.id)));
        let mut ids = HashMap::new();
        for c in &clusters {
            if c.members.is_empty() {
                return Err(format!("cluster {} has no members", c.id));
            }
            if !c.members.iter().any(|m| m.canonical() == c.label) {
                return Err(format!("cluster {} label {:?} is not a member", c.id, c.label));
            }
            if ids.insert(c.id, ()).is_some() {
                return Err(format!("duplicate cluster id {}", c.id));
            }
        }
        for (&(a, b), &n) in &links {
            if a >= b {
                return Err(format!("link ({a}, {b}) must have its smaller id first"));
            }
            if !ids.contains_key(&a) || !ids.contains_key(&b) {
                return Err(format!("link ({a}, {b}) refers to an unknown cluster"));
            }
            if n == 0 {
                return Err(format!("link ({a}, {b}) has zero count"));
            }
        }
        Ok(Self { clusters, links })
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn links(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn get(&self, id: usize) -> Option<&Cluster> {
        self.clusters.iter().find(|c| c.id == id)
    }

    /// Sum of link counts touching each cluster id.
    pub fn link_degree(&self) -> HashMap<usize, usize> {
        let mut deg: HashMap<usize, usize> = self.clusters.iter().map(|c| (c.id, 0)).collect();
        for (&(a, b), &n) in &self.links {
            *deg.entry(a).or_default() += n;
            *deg.entry(b).or_default() += n;
        }
        deg
    }

    /// Connected components of the link network as lists of cluster ids.
    /// Components are ordered by decreasing cluster count, then decreasing
    /// total size, then by the position of their first cluster.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let pos: HashMap<usize, usize> = self.clusters.iter().enumerate().map(|(i, c)| (c.id, i)).collect();
        let mut nbrs = vec![Vec::new(); self.clusters.len()];
        for &(a, b) in self.links.keys() {
            nbrs[pos[&a]].push(pos[&b]);
            nbrs[pos[&b]].push(pos[&a]);
        }
        let mut seen = vec![false; self.clusters.len()];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.clusters.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &nbrs[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        let size = |c: &Vec<usize>| c.iter().map(|&i| self.clusters[i].size()).sum::<usize>();
        comps.sort_by(|x, y| {
            y.len()
                .cmp(&x.len())
                .then_with(|| size(y).cmp(&size(x)))
                .then_with(|| x[0].cmp(&y[0]))
        });
        comps
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.clusters[i].id).collect())
            .collect()
    }
}

/// Count term relations crossing each pair of clusters. Fails unless the
/// clusters partition the graph's terms.
pub fn build_cluster_graph(clusters: Vec<Cluster>, g: &TermGraph) -> Result<ClusterGraph, String> {
    let mut owner: HashMap<&Term, usize> = HashMap::new();
    for c in &clusters {
        for m in &c.members {
            if g.term_id(m).is_none() {
                return Err(format!("cluster member {:?} is not in the term graph", m.canonical()));
            }
            if owner.insert(m, c.id).is_some() {
                return Err(format!("term {:?} is in more than one cluster", m.canonical()));
            }
        }
    }
    if owner.len() != g.term_count() {
        return Err(format!("clusters cover {} of {} terms", owner.len(), g.term_count()));
    }
    let mut links = BTreeMap::new();
    for e in g.edges() {
        let (ca, cb) = (owner[&e.a], owner[&e.b]);
        if ca != cb {
            *links.entry((ca.min(cb), ca.max(cb))).or_insert(0) += 1;
        }
    }
    ClusterGraph::new(clusters, links)
}

/// Clusters with at least `min_size` members, then the `k` largest by
/// size and then by link degree (ties by label), with the links among
/// them. Cluster ids are kept.
pub fn select_for_display(cg: &ClusterGraph, k: usize, min_size: usize) -> ClusterGraph {
    let degree = cg.link_degree();
    let mut ranked: Vec<&Cluster> = cg.clusters().iter().filter(|c| c.size() >= min_size).collect();
    ranked.sort_by(|a, b| {
        b.size()
            .cmp(&a.size())
            .then_with(|| degree[&b.id].cmp(&degree[&a.id]))
            .then_with(|| a.label.cmp(&b.label))
    });
    ranked.truncate(k);
    let keep: HashMap<usize, ()> = ranked.iter().map(|c| (c.id, ())).collect();
    let clusters: Vec<Cluster> = cg
        .clusters()
        .iter()
        .filter(|c| keep.contains_key(&c.id))
        .cloned()
        .collect();
    let links = cg
        .links()
        .iter()
        .filter(|((a, b), _)| keep.contains_key(a) && keep.contains_key(b))
        .map(|(&p, &n)| (p, n))
        .collect();
    ClusterGraph::new(clusters, links).expect("a sub-selection of a valid graph is valid")
}
