//! Versioned text dumps passed between pipeline stages.
//!
//! Every dump starts with a header line `#topicmap <kind> v<version>`.
//! Tab-separated fields escape `\`, tab, newline and `;` with a backslash.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cluster::Cluster;
use crate::corpus::{parse_jsonl, write_jsonl, Record};
use crate::termex::{Term, TermIndex, TermStats};
use crate::variants::{RelationKind, TermGraph, VariantRelation};

pub const DUMP_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DumpError {
    #[error("{kind} dump: expected header version v{expected}, found {found}")]
    Version {
        kind: &'static str,
        expected: u32,
        found: String,
    },
    #[error("{kind} dump line {line}: {message}")]
    Syntax {
        kind: &'static str,
        line: usize,
        message: String,
    },
}

fn header(kind: &str) -> String {
    format!("#topicmap {kind} v{DUMP_VERSION}\n")
}

/// Split off and check the header; returns the body lines with their
/// 1-based line numbers.
fn body<'a>(kind: &'static str, text: &'a str) -> Result<impl Iterator<Item = (usize, &'a str)>, DumpError> {
    let mut lines = text.lines();
    let first = lines.next().unwrap_or("");
    let prefix = format!("#topicmap {kind} ");
    let found = match first.strip_prefix(&prefix) {
        Some(v) => v.to_string(),
        None if first.is_empty() => "no header".to_string(),
        None => format!("header {first:?}"),
    };
    if found != format!("v{DUMP_VERSION}") {
        return Err(DumpError::Version {
            kind,
            expected: DUMP_VERSION,
            found,
        });
    }
    Ok(lines
        .enumerate()
        .map(|(i, l)| (i + 2, l))
        .filter(|(_, l)| !l.is_empty()))
}

fn escape(field: &str) -> String {
    let mut out = String::with_capacity(field.len());
    for c in field.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            ';' => out.push_str("\\;"),
            c => out.push(c),
        }
    }
    out
}

/// Undo [`escape`] and split on unescaped `;`.
fn unescape_list(field: &str) -> Result<Vec<String>, String> {
    let mut items = vec![String::new()];
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => match chars.next() {
                Some('\\') => items.last_mut().unwrap().push('\\'),
                Some('t') => items.last_mut().unwrap().push('\t'),
                Some('n') => items.last_mut().unwrap().push('\n'),
                Some(';') => items.last_mut().unwrap().push(';'),
                other => return Err(format!("bad escape \\{}", other.map(String::from).unwrap_or_default())),
            },
            ';' => items.push(String::new()),
            c => items.last_mut().unwrap().push(c),
        }
    }
    Ok(items)
}

fn unescape(field: &str) -> Result<String, String> {
    let items = unescape_list(field)?;
    if items.len() != 1 {
        return Err(format!("unescaped ';' in {field:?}"));
    }
    Ok(items.into_iter().next().unwrap_or_default())
}

fn fields<'a>(kind: &'static str, line: usize, text: &'a str, n: usize) -> Result<Vec<&'a str>, DumpError> {
    let parts: Vec<&str> = text.split('\t').collect();
    if parts.len() != n {
        return Err(DumpError::Syntax {
            kind,
            line,
            message: format!("expected {n} tab-separated fields, found {}", parts.len()),
        });
    }
    Ok(parts)
}

fn syntax(kind: &'static str, line: usize) -> impl Fn(String) -> DumpError {
    move |message| DumpError::Syntax { kind, line, message }
}

// ---- records ----

pub fn write_records(records: &[Record]) -> String {
    header("records") + &write_jsonl(records)
}

pub fn read_records(text: &str) -> Result<Vec<Record>, DumpError> {
    let body_start = text.find('\n').map_or(text.len(), |i| i + 1);
    body("records", text)?.for_each(drop);
    let parsed = parse_jsonl(&text[body_start..]).map_err(|e| DumpError::Syntax {
        kind: "records",
        line: 0,
        message: e.to_string(),
    })?;
    if let Some(w) = parsed.warnings.first() {
        return Err(DumpError::Syntax {
            kind: "records",
            line: w.line + 1,
            message: w.message.clone(),
        });
    }
    Ok(parsed.records)
}

// ---- terms ----

/// `canonical<TAB>head index<TAB>freq<TAB>doc1;doc2;...`
pub fn write_terms(index: &TermIndex) -> String {
    let mut out = header("terms");
    for (t, s) in index.iter() {
        let docs: Vec<String> = s.docs.iter().map(|d| escape(d)).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            escape(t.canonical()),
            t.head_index(),
            s.freq,
            docs.join(";")
        ));
    }
    out
}

pub fn read_terms(text: &str) -> Result<TermIndex, DumpError> {
    const K: &str = "terms";
    let mut entries = Vec::new();
    for (line, l) in body(K, text)? {
        let err = syntax(K, line);
        let f = fields(K, line, l, 4)?;
        let canonical = unescape(f[0]).map_err(&err)?;
        let head: usize = f[1].parse().map_err(|_| err(format!("bad head index {:?}", f[1])))?;
        let freq: usize = f[2].parse().map_err(|_| err(format!("bad frequency {:?}", f[2])))?;
        let docs: BTreeSet<String> = unescape_list(f[3]).map_err(&err)?.into_iter().collect();
        let term = Term::with_head(&canonical, head).map_err(|e| err(e.to_string()))?;
        entries.push((term, TermStats { freq, docs }));
    }
    TermIndex::from_entries(entries).map_err(syntax(K, 0))
}

// ---- edges ----

/// `a<TAB>kind<TAB>b` in canonical edge order.
pub fn write_edges(g: &TermGraph) -> String {
    let mut out = header("edges");
    for e in g.edges() {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            escape(e.a.canonical()),
            e.kind,
            escape(e.b.canonical())
        ));
    }
    out
}

pub fn read_edges(text: &str, index: TermIndex) -> Result<TermGraph, DumpError> {
    const K: &str = "edges";
    let mut edges = Vec::new();
    for (line, l) in body(K, text)? {
        let err = syntax(K, line);
        let f = fields(K, line, l, 3)?;
        let lookup = |field: &str| -> Result<Term, DumpError> {
            let text = unescape(field).map_err(&err)?;
            index
                .find(&text)
                .cloned()
                .ok_or_else(|| err(format!("unknown term {text:?}")))
        };
        let kind: RelationKind = f[1].parse().map_err(&err)?;
        let (a, b) = (lookup(f[0])?, lookup(f[2])?);
        edges.push(VariantRelation { a, b, kind });
    }
    TermGraph::new(index, edges).map_err(syntax(K, 0))
}

// ---- clusters ----

/// `id<TAB>label<TAB>size<TAB>member1;member2;...` sorted by id.
pub fn write_clusters(clusters: &[Cluster]) -> String {
    let mut sorted: Vec<&Cluster> = clusters.iter().collect();
    sorted.sort_by_key(|c| c.id);
    let mut out = header("clusters");
    for c in sorted {
        let members: Vec<String> = c.members.iter().map(|m| escape(m.canonical())).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            c.id,
            escape(&c.label),
            c.size(),
            members.join(";")
        ));
    }
    out
}

pub fn read_clusters(text: &str, index: &TermIndex) -> Result<Vec<Cluster>, DumpError> {
    const K: &str = "clusters";
    let mut clusters = Vec::new();
    for (line, l) in body(K, text)? {
        let err = syntax(K, line);
        let f = fields(K, line, l, 4)?;
        let id: usize = f[0].parse().map_err(|_| err(format!("bad cluster id {:?}", f[0])))?;
        let label = unescape(f[1]).map_err(&err)?;
        let size: usize = f[2].parse().map_err(|_| err(format!("bad size {:?}", f[2])))?;
        let mut members = Vec::new();
        for m in unescape_list(f[3]).map_err(&err)? {
            members.push(
                index
                    .find(&m)
                    .cloned()
                    .ok_or_else(|| err(format!("unknown term {m:?}")))?,
            );
        }
        members.sort();
        if members.len() != size {
            return Err(err(format!("size {size} but {} members", members.len())));
        }
        clusters.push(Cluster { id, label, members });
    }
    Ok(clusters)
}
