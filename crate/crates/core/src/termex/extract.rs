//! Noun-phrase pattern matching over tagged sentences.
//!
//! Two patterns are recognised:
//!
//! * compounds `(ADJ|NOUN)* NOUN`, head = last noun;
//! * of-phrases `NOUN+ of (ADJ|NOUN)* NOUN`, head = noun before `of`.
//!
//! Candidate windows are limited to `max_len` tokens. A matching window
//! is *maximal* when no other matching window of at most `max_len` tokens
//! contains it. Maximal windows of two or more tokens become terms, along
//! with (optionally) their sub-windows that end at the head. Maximal
//! single-noun windows are single-word candidates; whether they survive is
//! decided corpus-wide by the index.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::lexicon::{PluralRules, PosTag};
use super::normalize::normalize_term;
use super::tagger::Token;
use super::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExtractConfig {
    pub max_term_len: usize,
    pub min_doc_freq: usize,
    pub nested_subterms: bool,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        Self {
            max_term_len: 6,
            min_doc_freq: 2,
            nested_subterms: true,
        }
    }
}

/// A term found in a sentence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TermOccurrence {
    pub term: Term,
    pub sentence: usize,
    /// Token position of the first word in the sentence.
    pub start: usize,
    /// Window length in raw tokens.
    pub len: usize,
}

fn is_content(tag: PosTag) -> bool {
    matches!(tag, PosTag::Adj | PosTag::Noun)
}

struct Sentence<'a> {
    tokens: &'a [Token],
    of: Vec<bool>,
}

impl<'a> Sentence<'a> {
    fn new(tokens: &'a [Token]) -> Self {
        let of = tokens
            .iter()
            .map(|t| t.tag == PosTag::Prep && t.surface.eq_ignore_ascii_case("of"))
            .collect();
        Self { tokens, of }
    }

    fn tag(&self, i: usize) -> PosTag {
        self.tokens[i].tag
    }

    /// Absolute head position if `[i, j)` matches either pattern.
    fn match_window(&self, i: usize, j: usize) -> Option<usize> {
        if j <= i || self.tag(j - 1) != PosTag::Noun {
            return None;
        }
        let mut of_at = None;
        for k in i..j {
            if self.of[k] {
                if of_at.is_some() {
                    return None;
                }
                of_at = Some(k);
            } else if !is_content(self.tag(k)) {
                return None;
            }
        }
        match of_at {
            None => Some(j - 1),
            Some(p) => {
                let nouns_before = p > i && (i..p).all(|k| self.tag(k) == PosTag::Noun);
                (nouns_before && p + 1 < j).then(|| p - 1)
            }
        }
    }

    fn can_extend_through(&self, k: usize) -> bool {
        self.of[k] || is_content(self.tag(k))
    }
}

/// Term occurrences in tagged sentences, ordered by sentence, start, length.
pub fn extract_terms(sentences: &[Vec<Token>], cfg: &ExtractConfig, plurals: &PluralRules) -> Vec<TermOccurrence> {
    let mut out = Vec::new();
    for (s_idx, tokens) in sentences.iter().enumerate() {
        for (start, len, head) in sentence_spans(tokens, cfg) {
            let words: Vec<&str> = tokens[start..start + len].iter().map(|t| t.surface.as_str()).collect();
            let Some(term) = normalize_term(&words, head - start, plurals) else {
                continue;
            };
            if term.len() > cfg.max_term_len {
                continue;
            }
            out.push(TermOccurrence {
                term,
                sentence: s_idx,
                start,
                len,
            });
        }
    }
    out
}

/// Distinct `(start, len, head)` spans to emit for one sentence.
fn sentence_spans(tokens: &[Token], cfg: &ExtractConfig) -> BTreeSet<(usize, usize, usize)> {
    let n = tokens.len();
    let max = cfg.max_term_len.max(1);
    let sent = Sentence::new(tokens);

    // matching[i][l-1] = head of window [i, i+l)
    let mut matching: Vec<Vec<Option<usize>>> = vec![vec![None; max]; n];
    for i in 0..n {
        if !sent.can_extend_through(i) {
            continue;
        }
        for j in i + 1..=n.min(i + max) {
            if !sent.can_extend_through(j - 1) {
                break;
            }
            matching[i][j - i - 1] = sent.match_window(i, j);
        }
    }
    let matches = |i: usize, j: usize| j > i && j - i <= max && j <= n && matching[i][j - i - 1].is_some();

    let mut spans = BTreeSet::new();
    for (i, row) in matching.iter().enumerate().take(n) {
        for len in 1..=max {
            let j = i + len;
            let Some(head) = (j <= n).then(|| row[len - 1]).flatten() else {
                continue;
            };
            let contained = (j.saturating_sub(max)..=i)
                .any(|i2| (j..=n.min(i2 + max)).any(|j2| (i2, j2) != (i, j) && matches(i2, j2)));
            if contained {
                continue;
            }
            spans.insert((i, len, head));
            if len >= 2 && cfg.nested_subterms {
                for k in i..head {
                    if (k, head + 1) != (i, j) {
                        spans.insert((k, head + 1 - k, head));
                    }
                }
            }
        }
    }
    spans
}
