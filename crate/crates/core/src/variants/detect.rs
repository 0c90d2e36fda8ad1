//! Pairwise variation detectors. All detectors are pure functions of the
//! two terms (and the synonym lexicon where relevant).

use super::kind::{RelationKind, VariantRelation};
use super::synlex::SynLex;
use crate::termex::Term;

/// British/American suffix folds, applied to a token's ending. The number
/// is the minimum stem length left before the suffix.
const SPELLING_FOLDS: [(&str, &str, usize); 3] = [("isation", "ization", 2), ("logue", "log", 2), ("our", "or", 3)];

fn fold_token(token: &str) -> String {
    for (from, to, min_stem) in SPELLING_FOLDS {
        if let Some(stem) = token.strip_suffix(from) {
            if stem.chars().count() >= min_stem {
                return format!("{stem}{to}");
            }
        }
    }
    token.to_string()
}

/// Key under which spelling variants coincide: suffix-folded tokens
/// concatenated without spaces.
pub fn spelling_key(term: &Term) -> String {
    term.tokens().iter().map(|t| fold_token(t)).collect()
}

fn is_subsequence(short: &[String], long: &[String]) -> bool {
    let mut it = long.iter();
    short.iter().all(|s| it.any(|l| l == s))
}

/// `b` obtained from `a` by inserting words. Fires only when `a` is the
/// shorter term; the relation points from `a` (general) to `b` (specific).
pub fn detect_inclusion(a: &Term, b: &Term) -> Option<VariantRelation> {
    if a.len() >= b.len() || !is_subsequence(a.tokens(), b.tokens()) {
        return None;
    }
    let kind = if a.head_word() == b.head_word() {
        RelationKind::ModifierExpansion
    } else {
        RelationKind::HeadExpansion
    };
    VariantRelation::new(a.clone(), b.clone(), kind)
}

/// A one-word substitution between equal-length multiword terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    /// Plain substitution edge (`HeadSubstitution` or `ModifierSubstitution`).
    pub relation: VariantRelation,
    /// Token position that differs.
    pub position: usize,
    /// The two differing words share a synset.
    pub synonym_backed: bool,
}

/// Same length, exactly one differing position. Single-word terms are
/// never substitutions of each other.
pub fn detect_substitution(a: &Term, b: &Term, syn: &SynLex) -> Option<Substitution> {
    if a.len() != b.len() || a.len() < 2 {
        return None;
    }
    let mut diff = a
        .tokens()
        .iter()
        .zip(b.tokens())
        .enumerate()
        .filter(|(_, (x, y))| x != y);
    let (position, (x, y)) = diff.next()?;
    if diff.next().is_some() {
        return None;
    }
    let kind = if position == a.head_index() && position == b.head_index() {
        RelationKind::HeadSubstitution
    } else {
        RelationKind::ModifierSubstitution
    };
    Some(Substitution {
        relation: VariantRelation::new(a.clone(), b.clone(), kind)?,
        position,
        synonym_backed: syn.are_synonyms(x, y),
    })
}

/// Equal after compound fusion or British/American suffix folding.
pub fn detect_spelling(a: &Term, b: &Term) -> Option<VariantRelation> {
    if a.canonical() == b.canonical() || spelling_key(a) != spelling_key(b) {
        return None;
    }
    VariantRelation::new(a.clone(), b.clone(), RelationKind::Spelling)
}

/// Two single words sharing a synset, or a synonym-backed substitution.
pub fn detect_synonymy(a: &Term, b: &Term, syn: &SynLex) -> Option<VariantRelation> {
    let backed = if a.is_single_word() && b.is_single_word() {
        syn.are_synonyms(a.head_word(), b.head_word())
    } else {
        detect_substitution(a, b, syn).is_some_and(|s| s.synonym_backed)
    };
    if !backed {
        return None;
    }
    VariantRelation::new(a.clone(), b.clone(), RelationKind::Synonymy)
}

/// The single relation between two terms, if any. Spelling is checked
/// first, then inclusion in whichever direction applies, then synonymy,
/// then plain substitution.
pub fn classify(a: &Term, b: &Term, syn: &SynLex) -> Option<VariantRelation> {
    if let Some(r) = detect_spelling(a, b) {
        return Some(r);
    }
    let inclusion = if a.len() < b.len() {
        detect_inclusion(a, b)
    } else {
        detect_inclusion(b, a)
    };
    if inclusion.is_some() {
        return inclusion;
    }
    if let Some(r) = detect_synonymy(a, b, syn) {
        return Some(r);
    }
    detect_substitution(a, b, syn).map(|s| s.relation)
}
