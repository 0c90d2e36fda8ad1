//! Independent oracles shared by the integration tests and the acceptance
//! runner. Nothing here calls into the detectors or writers under test.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use proptest::prelude::*;
use regex::Regex;
use topicmap::cluster::{Cluster, ClusterGraph};
use topicmap::termex::{Term, TermIndex, TermStats};
use topicmap::variants::{RelationKind, SynLex, TermGraph, VariantRelation};

/// Edge in a normal form: directed kinds keep (general, specific),
/// symmetric kinds are sorted by text.
pub type OracleEdge = (String, RelationKind, String);

pub fn normal_edge(a: &str, kind: RelationKind, b: &str) -> OracleEdge {
    if kind.is_directed() || a <= b {
        (a.to_string(), kind, b.to_string())
    } else {
        (b.to_string(), kind, a.to_string())
    }
}

pub fn graph_edges(g: &TermGraph) -> BTreeSet<OracleEdge> {
    g.edges()
        .iter()
        .map(|e| normal_edge(e.a.canonical(), e.kind, e.b.canonical()))
        .collect()
}

fn folds() -> &'static [(Regex, &'static str)] {
    static F: OnceLock<Vec<(Regex, &'static str)>> = OnceLock::new();
    F.get_or_init(|| {
        vec![
            (Regex::new(r"^(.{2,})isation$").unwrap(), "${1}ization"),
            (Regex::new(r"^(.{2,})logue$").unwrap(), "${1}log"),
            (Regex::new(r"^(.{3,})our$").unwrap(), "${1}or"),
        ]
    })
}

fn fold(token: &str) -> String {
    for (re, rep) in folds() {
        if re.is_match(token) {
            return re.replace(token, *rep).into_owned();
        }
    }
    token.to_string()
}

/// Longest common subsequence length.
fn lcs(a: &[String], b: &[String]) -> usize {
    let mut dp = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for i in 0..a.len() {
        for j in 0..b.len() {
            dp[i + 1][j + 1] = if a[i] == b[j] {
                dp[i][j] + 1
            } else {
                dp[i][j + 1].max(dp[i + 1][j])
            };
        }
    }
    dp[a.len()][b.len()]
}

/// Synonym sets as plain word pairs.
pub struct SynPairs(pub BTreeSet<(String, String)>);

impl SynPairs {
    pub fn from_sets(sets: &[&[&str]]) -> Self {
        let mut pairs = BTreeSet::new();
        for set in sets {
            for x in *set {
                for y in *set {
                    if x != y {
                        pairs.insert((x.to_string(), y.to_string()));
                    }
                }
            }
        }
        SynPairs(pairs)
    }

    fn syn(&self, x: &str, y: &str) -> bool {
        self.0.contains(&(x.to_string(), y.to_string()))
    }
}

/// The relation between two distinct terms, straight from the rules.
pub fn oracle_classify(a: &Term, b: &Term, syn: &SynPairs) -> Option<OracleEdge> {
    let (ta, tb) = (a.tokens(), b.tokens());
    let key = |t: &[String]| t.iter().map(|w| fold(w)).collect::<Vec<_>>().concat();
    if key(ta) == key(tb) {
        return Some(normal_edge(a.canonical(), RelationKind::Spelling, b.canonical()));
    }
    let (short, long) = if ta.len() < tb.len() { (a, b) } else { (b, a) };
    if short.len() < long.len() && lcs(short.tokens(), long.tokens()) == short.len() {
        let kind = if short.head_word() == long.head_word() {
            RelationKind::ModifierExpansion
        } else {
            RelationKind::HeadExpansion
        };
        return Some((short.canonical().to_string(), kind, long.canonical().to_string()));
    }
    if ta.len() == 1 && tb.len() == 1 {
        return syn
            .syn(&ta[0], &tb[0])
            .then(|| normal_edge(a.canonical(), RelationKind::Synonymy, b.canonical()));
    }
    if ta.len() != tb.len() {
        return None;
    }
    let diffs: Vec<usize> = (0..ta.len()).filter(|&i| ta[i] != tb[i]).collect();
    if diffs.len() != 1 {
        return None;
    }
    let p = diffs[0];
    let kind = if syn.syn(&ta[p], &tb[p]) {
        RelationKind::Synonymy
    } else if p == a.head_index() && p == b.head_index() {
        RelationKind::HeadSubstitution
    } else {
        RelationKind::ModifierSubstitution
    };
    Some(normal_edge(a.canonical(), kind, b.canonical()))
}

/// Every pair, no blocking.
pub fn oracle_sweep(terms: &[Term], syn: &SynPairs) -> BTreeSet<OracleEdge> {
    let mut out = BTreeSet::new();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            if let Some(e) = oracle_classify(&terms[i], &terms[j], syn) {
                out.insert(e);
            }
        }
    }
    out
}

pub fn index_of(terms: &[Term]) -> TermIndex {
    TermIndex::from_entries(terms.iter().map(|t| {
        (
            t.clone(),
            TermStats {
                freq: 1,
                docs: ["d".to_string()].into(),
            },
        )
    }))
    .unwrap()
}

/// Parsed Pajek files.
#[derive(Debug, Default, PartialEq)]
pub struct ParsedPajek {
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize, usize)>,
    pub partition: Vec<usize>,
    pub values: Vec<usize>,
}

fn unquote(s: &str) -> Result<String, String> {
    let inner = s
        .strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .ok_or_else(|| format!("label not quoted: {s}"))?;
    let mut out = String::new();
    let mut chars = inner.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '"' && chars.next() != Some('"') {
            return Err(format!("stray quote in {s}"));
        }
        out.push(c);
    }
    Ok(out)
}

fn vertex_list(text: &str, n_expected: Option<usize>) -> Result<Vec<usize>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    let n: usize = header
        .strip_prefix("*Vertices ")
        .ok_or_else(|| format!("bad header {header}"))?
        .trim()
        .parse()
        .map_err(|e| format!("{e}"))?;
    if let Some(m) = n_expected {
        if m != n {
            return Err(format!("{n} vertices, expected {m}"));
        }
    }
    let vals: Vec<usize> = lines
        .map(|l| l.trim().parse::<usize>().map_err(|e| format!("{l}: {e}")))
        .collect::<Result<_, _>>()?;
    if vals.len() != n {
        return Err(format!("{} values for {n} vertices", vals.len()));
    }
    Ok(vals)
}

/// Strict reader for the subset of Pajek the writer emits.
pub fn parse_pajek(net: &str, clu: &str, vec: &str) -> Result<ParsedPajek, String> {
    for (name, t) in [("net", net), ("clu", clu), ("vec", vec)] {
        if t.contains('\r') || !t.ends_with('\n') {
            return Err(format!("{name}: line endings"));
        }
    }
    let mut lines = net.lines();
    let header = lines.next().ok_or("empty net")?;
    let n: usize = header
        .strip_prefix("*Vertices ")
        .ok_or_else(|| format!("bad header {header}"))?
        .parse()
        .map_err(|e| format!("{e}"))?;
    let mut labels = Vec::new();
    for i in 1..=n {
        let l = lines.next().ok_or("missing vertex line")?;
        let (num, rest) = l.split_once(' ').ok_or_else(|| format!("bad vertex line {l}"))?;
        if num.parse::<usize>() != Ok(i) {
            return Err(format!("vertex {i} numbered {num}"));
        }
        labels.push(unquote(rest)?);
    }
    if lines.next() != Some("*Edges") {
        return Err("missing *Edges".into());
    }
    let mut edges = Vec::new();
    for l in lines {
        let f: Vec<usize> = l
            .split(' ')
            .map(|x| x.parse::<usize>().map_err(|e| format!("{l}: {e}")))
            .collect::<Result<_, _>>()?;
        if f.len() != 3 || f[0] == 0 || f[1] == 0 || f[0] > n || f[1] > n {
            return Err(format!("bad edge line {l}"));
        }
        edges.push((f[0], f[1], f[2]));
    }
    Ok(ParsedPajek {
        labels,
        edges,
        partition: vertex_list(clu, Some(n))?,
        values: vertex_list(vec, Some(n))?,
    })
}

/// Sum of term frequencies per head word.
pub fn head_frequencies(index: &TermIndex) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for (t, s) in index.iter() {
        *out.entry(t.head_word().to_string()).or_default() += s.freq;
    }
    out
}

// ---- generators ----

pub const VOCAB: &[&str] = &[
    "classification",
    "scheme",
    "system",
    "universal",
    "generic",
    "knowledge",
    "organization",
    "organisation",
    "catalog",
    "catalogue",
    "data",
    "base",
    "database",
    "tool",
    "of",
    "colour",
    "color",
    "library",
    "subject",
    "heading",
    "descriptor",
    "taxonomy",
];

pub const SETS: &[&[&str]] = &[
    &["scheme", "system"],
    &["taxonomy", "classification"],
    &["heading", "descriptor"],
    &["tool", "system", "instrument"],
];

pub fn lexicons() -> (SynLex, SynPairs) {
    (
        SynLex::from_sets(SETS.iter().map(|s| s.iter())),
        SynPairs::from_sets(SETS),
    )
}

/// Distinct terms (by text) over a small vocabulary, so that most
/// relation kinds occur. Heads are placed anywhere.
pub fn arb_terms(max: usize) -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec(
        (
            prop::collection::vec(0..VOCAB.len(), 1..=4),
            any::<prop::sample::Index>(),
        ),
        0..=max,
    )
    .prop_map(|raw| {
        let mut seen = BTreeSet::new();
        raw.into_iter()
            .filter_map(|(words, head)| {
                let text = words.iter().map(|&i| VOCAB[i]).collect::<Vec<_>>().join(" ");
                seen.insert(text.clone())
                    .then(|| Term::with_head(&text, head.index(words.len())).unwrap())
            })
            .collect()
    })
}

pub fn term(i: usize) -> Term {
    Term::parse(&format!("w{i} topic")).unwrap()
}

pub fn make_graph(n: usize, raw_edges: &[(usize, usize, usize)], dfs: &[usize]) -> TermGraph {
    let index = TermIndex::from_entries((0..n).map(|i| {
        let df = 1 + dfs[i % dfs.len()] % 4;
        (
            term(i),
            TermStats {
                freq: df,
                docs: (0..df).map(|d| format!("d{d}")).collect(),
            },
        )
    }))
    .unwrap();
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for &(a, b, k) in raw_edges {
        let (a, b) = (a % n, b % n);
        let kind = RelationKind::ALL[k % 6];
        if a == b || !seen.insert((a.min(b), a.max(b), kind)) {
            continue;
        }
        edges.push(VariantRelation::new(term(a), term(b), kind).unwrap());
    }
    TermGraph::new(index, edges).unwrap()
}

pub fn arb_graph() -> impl Strategy<Value = TermGraph> {
    (2usize..=300)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n, 0..n, 0usize..6), 0..(2 * n)),
                prop::collection::vec(0usize..10, 1..8),
            )
        })
        .prop_map(|(n, e, d)| make_graph(n, &e, &d))
}

pub const PIECES: &[&str] = &[
    "topic", "a\"b", "x<y", "s&t", "café", "it's", "\"", "scheme", "o'", "z>",
];

/// Random cluster graphs with awkward labels and scattered ids.
pub fn arb_cluster_graph() -> impl Strategy<Value = ClusterGraph> {
    (1usize..40)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..PIECES.len(), 1usize..6), n),
                prop::collection::vec((0..n, 0..n, 1usize..9), 0..3 * n),
                prop::collection::vec(1usize..1000, n),
            )
        })
        .prop_map(|(_, shapes, raw_links, id_seeds)| {
            let mut ids = BTreeSet::new();
            let ids: Vec<usize> = id_seeds
                .iter()
                .enumerate()
                .map(|(i, s)| if ids.insert(*s) { *s } else { 1000 + i })
                .collect();
            let clusters: Vec<Cluster> = shapes
                .iter()
                .enumerate()
                .map(|(i, &(piece, size))| {
                    let members: Vec<Term> = (0..size)
                        .map(|k| Term::parse(&format!("{} c{i} m{k}", PIECES[piece])).unwrap())
                        .collect();
                    Cluster {
                        id: ids[i],
                        label: members[0].canonical().to_string(),
                        members,
                    }
                })
                .collect();
            let mut links = BTreeMap::new();
            for (a, b, w) in raw_links {
                if a != b {
                    let (x, y) = (ids[a].min(ids[b]), ids[a].max(ids[b]));
                    links.insert((x, y), w);
                }
            }
            ClusterGraph::new(clusters, links).unwrap()
        })
}
