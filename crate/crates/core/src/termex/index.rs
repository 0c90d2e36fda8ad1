use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::term::Term;

/// Corpus statistics for one term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermStats {
    /// Number of occurrences.
    pub freq: usize,
    /// Records the term occurs in.
    pub docs: BTreeSet<String>,
}

impl TermStats {
    pub fn doc_freq(&self) -> usize {
        self.docs.len()
    }
}

/// Unfiltered occurrence counts. Merging is associative and commutative,
/// so partial counts built on any partition of the corpus combine into
/// the same result.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermCounts {
    entries: BTreeMap<Term, TermStats>,
}

impl TermCounts {
    pub fn add(&mut self, term: Term, doc_id: &str) {
        let stats = self.entries.entry(term).or_default();
        stats.freq += 1;
        if !stats.docs.contains(doc_id) {
            stats.docs.insert(doc_id.to_string());
        }
    }

    pub fn merge(mut self, other: TermCounts) -> TermCounts {
        if self.entries.len() < other.entries.len() {
            return other.merge(self);
        }
        for (term, stats) in other.entries {
            let mine = self.entries.entry(term).or_default();
            mine.freq += stats.freq;
            mine.docs.extend(stats.docs);
        }
        self
    }

    /// Apply the corpus-level filters: single-word terms are kept only when
    /// the word heads some multiword term; then terms found in fewer than
    /// `min_doc_freq` records are dropped.
    ///
    /// Occurrences that normalized to the same text with different head
    /// positions are first merged into the most frequent reading (ties go
    /// to the earlier head), so canonical text identifies an indexed term.
    pub fn finalize(self, min_doc_freq: usize) -> TermIndex {
        let entries = merge_same_canonical(self.entries);
        let heads: HashSet<String> = entries
            .keys()
            .filter(|t| !t.is_single_word())
            .map(|t| t.head_word().to_string())
            .collect();
        let entries = entries
            .into_iter()
            .filter(|(t, _)| !t.is_single_word() || heads.contains(t.head_word()))
            .filter(|(_, s)| s.doc_freq() >= min_doc_freq.max(1))
            .collect();
        TermIndex { entries }
    }
}

fn merge_same_canonical(entries: BTreeMap<Term, TermStats>) -> BTreeMap<Term, TermStats> {
    let mut out: BTreeMap<Term, TermStats> = BTreeMap::new();
    let mut group: Vec<(Term, TermStats)> = Vec::new();
    let mut flush = |group: &mut Vec<(Term, TermStats)>| {
        if group.is_empty() {
            return;
        }
        let best = group
            .iter()
            .enumerate()
            .max_by(|(_, (ta, sa)), (_, (tb, sb))| {
                sa.freq
                    .cmp(&sb.freq)
                    .then_with(|| tb.head_index().cmp(&ta.head_index()))
            })
            .map(|(i, _)| i)
            .unwrap_or(0);
        let term = group[best].0.clone();
        let mut merged = TermStats::default();
        for (_, s) in group.drain(..) {
            merged.freq += s.freq;
            merged.docs.extend(s.docs);
        }
        out.insert(term, merged);
    };
    for (term, stats) in entries {
        if group.last().is_some_and(|(t, _)| t.canonical() != term.canonical()) {
            flush(&mut group);
        }
        group.push((term, stats));
    }
    flush(&mut group);
    out
}

/// Indexed terms in canonical order with their statistics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermIndex {
    entries: BTreeMap<Term, TermStats>,
}

impl TermIndex {
    /// Build from already-aggregated statistics. Entries must satisfy
    /// `freq >= docs >= 1` and have distinct canonical texts.
    pub fn from_entries(entries: impl IntoIterator<Item = (Term, TermStats)>) -> Result<Self, String> {
        let mut map = BTreeMap::new();
        for (term, stats) in entries {
            if stats.docs.is_empty() || stats.freq < stats.docs.len() {
                return Err(format!(
                    "term {:?}: frequency {} with {} documents",
                    term.canonical(),
                    stats.freq,
                    stats.docs.len()
                ));
            }
            if map.insert(term.clone(), stats).is_some() {
                return Err(format!("duplicate term {:?}", term.canonical()));
            }
        }
        let mut prev: Option<&Term> = None;
        for t in map.keys() {
            if prev.is_some_and(|p| p.canonical() == t.canonical()) {
                return Err(format!("term {:?} appears with two head positions", t.canonical()));
            }
            prev = Some(t);
        }
        Ok(Self { entries: map })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> + '_ {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &TermStats)> + '_ {
        self.entries.iter()
    }

    pub fn get(&self, term: &Term) -> Option<&TermStats> {
        self.entries.get(term)
    }

    /// The indexed term with this canonical text.
    pub fn find(&self, canonical: &str) -> Option<&Term> {
        // Head 0 is the smallest term with this text, and terms order by
        // text first.
        let probe = Term::with_head(canonical, 0).ok()?;
        self.entries
            .range(probe..)
            .next()
            .map(|(t, _)| t)
            .filter(|t| t.canonical() == canonical)
    }

    pub fn contains(&self, term: &Term) -> bool {
        self.entries.contains_key(term)
    }

    pub fn freq(&self, term: &Term) -> usize {
        self.get(term).map_or(0, |s| s.freq)
    }

    pub fn doc_freq(&self, term: &Term) -> usize {
        self.get(term).map_or(0, TermStats::doc_freq)
    }
}

/// Aggregate `(term, record id)` occurrences into an index.
pub fn index_terms<'a, I>(occurrences: I, min_doc_freq: usize) -> TermIndex
where
    I: IntoIterator<Item = (Term, &'a str)>,
{
    let mut counts = TermCounts::default();
    for (term, doc) in occurrences {
        counts.add(term, doc);
    }
    counts.finalize(min_doc_freq)
}
