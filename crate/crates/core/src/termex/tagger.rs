use super::lexicon::{Lexicon, PosTag};
use super::tokenize::RawToken;

/// A tagged token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub start: usize,
    pub tag: PosTag,
}

const ADJ_SUFFIXES: [&str; 4] = ["al", "ic", "ive", "ous"];
const NOUN_SUFFIXES: [&str; 8] = ["tion", "ment", "ness", "ity", "ism", "er", "or", "y"];
const VERB_SUFFIXES: [&str; 3] = ["ize", "ise", "ate"];

/// Tag for a word missing from the lexicon, by suffix; `None` when no rule
/// applies. At least two characters must precede the suffix.
pub fn suffix_tag(word: &str) -> Option<PosTag> {
    let len = word.chars().count();
    let fits = |s: &&str| word.ends_with(*s) && len >= s.len() + 2;
    if ADJ_SUFFIXES.iter().any(fits) {
        Some(PosTag::Adj)
    } else if NOUN_SUFFIXES.iter().any(fits) {
        Some(PosTag::Noun)
    } else if VERB_SUFFIXES.iter().any(fits) {
        Some(PosTag::Verb)
    } else {
        None
    }
}

fn strip_possessive(word: &str) -> &str {
    word.strip_suffix("'s")
        .or_else(|| word.strip_suffix("\u{2019}s"))
        .unwrap_or(word)
}

/// Tag one lowercase word: lexicon entry, then the entry of its last
/// hyphen part, then the entry of its singular form; words without
/// letters are `OTHER`; then suffix rules; `NOUN` by default.
pub fn tag_word(word: &str, lexicon: &Lexicon) -> PosTag {
    let word = strip_possessive(word);
    if let Some(tag) = lexicon.pos.get(word) {
        return tag;
    }
    let last_part = word.rsplit('-').next().unwrap_or(word);
    if last_part != word {
        if let Some(tag) = lexicon.pos.get(last_part) {
            return tag;
        }
    }
    let singular = lexicon.plurals.singularize(last_part);
    if singular != last_part {
        if let Some(tag) = lexicon.pos.get(singular.as_str()) {
            return tag;
        }
    }
    if !word.chars().any(char::is_alphabetic) {
        return PosTag::Other;
    }
    suffix_tag(last_part).unwrap_or(PosTag::Noun)
}

pub fn pos_tag(tokens: &[RawToken], lexicon: &Lexicon) -> Vec<Token> {
    tokens
        .iter()
        .map(|t| Token {
            surface: t.surface.clone(),
            start: t.start,
            tag: tag_word(&t.surface.to_lowercase(), lexicon),
        })
        .collect()
}
