use super::lexicon::PluralRules;
use super::term::{infer_head, Term};

/// Split on hyphens that sit between two letters.
fn split_hyphens(word: &str) -> Vec<String> {
    let chars: Vec<char> = word.chars().collect();
    let mut parts = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let between_letters =
            i > 0 && i + 1 < chars.len() && chars[i - 1].is_alphabetic() && chars[i + 1].is_alphabetic();
        if c == '-' && between_letters {
            parts.push(std::mem::take(&mut current));
        } else {
            current.push(c);
        }
    }
    parts.push(current);
    parts.retain(|p| !p.is_empty());
    parts
}

fn strip_possessive(mut word: &str) -> &str {
    loop {
        let stripped = word
            .strip_suffix("'s")
            .or_else(|| word.strip_suffix("\u{2019}s"))
            .or_else(|| word.strip_suffix('\''))
            .or_else(|| word.strip_suffix('\u{2019}'))
            .filter(|w| !w.is_empty());
        match stripped {
            Some(w) => word = w,
            None => return word,
        }
    }
}

/// Normalize a matched word sequence whose head is at `head`.
///
/// Lowercases, drops possessive `'s`, splits letter-hyphen-letter words
/// into separate tokens (the head moves to the last part of the head
/// word) and singularizes every token. Returns `None` for an empty input
/// or an out-of-range head.
pub fn normalize_term<S: AsRef<str>>(words: &[S], head: usize, plurals: &PluralRules) -> Option<Term> {
    if head >= words.len() {
        return None;
    }
    let mut tokens = Vec::with_capacity(words.len() + 1);
    let mut new_head = None;
    for (i, w) in words.iter().enumerate() {
        let lower = w.as_ref().to_lowercase();
        for part in lower.split_whitespace() {
            for piece in split_hyphens(part) {
                tokens.push(plurals.singularize(strip_possessive(&piece)));
            }
        }
        if i == head {
            new_head = tokens.len().checked_sub(1);
        }
    }
    Term::new(tokens, new_head?).ok()
}

/// Normalize free text as one term; the head is inferred (word before an
/// interior `of`, otherwise the last word).
pub fn normalize_phrase(text: &str, plurals: &PluralRules) -> Option<Term> {
    let words: Vec<&str> = text.split_whitespace().collect();
    if words.is_empty() {
        return None;
    }
    let lowered: Vec<String> = words.iter().map(|w| w.to_lowercase()).collect();
    normalize_term(&words, infer_head(&lowered), plurals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules() -> PluralRules {
        PluralRules::bundled()
    }

    #[test]
    fn case_and_plural() {
        let t = normalize_phrase("Classification Schemes", &rules()).unwrap();
        assert_eq!(t.canonical(), "classification scheme");
        assert_eq!(t.head_index(), 1);
    }

    #[test]
    fn hyphen_split_moves_head() {
        let t = normalize_phrase("gay-lesbian classification vocabulary", &rules()).unwrap();
        assert_eq!(t.tokens(), ["gay", "lesbian", "classification", "vocabulary"]);
        assert_eq!(t.head_word(), "vocabulary");
        let t = normalize_term(&["Subject", "data-bases"], 1, &rules()).unwrap();
        assert_eq!(t.tokens(), ["subject", "data", "base"]);
        assert_eq!(t.head_index(), 2);
        // digits keep their hyphen
        let t = normalize_phrase("web-2 tools", &rules()).unwrap();
        assert_eq!(t.canonical(), "web-2 tool");
    }

    #[test]
    fn exceptions() {
        let r = rules();
        assert_eq!(normalize_phrase("thesis", &r).unwrap().canonical(), "thesis");
        assert_eq!(normalize_phrase("Theses", &r).unwrap().canonical(), "thesis");
        assert_eq!(normalize_phrase("thesauri", &r).unwrap().canonical(), "thesaurus");
        assert_eq!(
            normalize_phrase("bibliographic databases", &r).unwrap().canonical(),
            "bibliographic database"
        );
    }

    #[test]
    fn of_phrases_and_possessives() {
        let r = rules();
        let t = normalize_phrase("Organization of Libraries", &r).unwrap();
        assert_eq!(t.canonical(), "organization of library");
        assert_eq!(t.head_word(), "organization");
        let t = normalize_phrase("Greenblatt's studies", &r).unwrap();
        assert_eq!(t.canonical(), "greenblatt study");
    }

    #[test]
    fn empty_and_bad_head() {
        assert!(normalize_phrase("   ", &rules()).is_none());
        assert!(normalize_term(&["a"], 3, &rules()).is_none());
    }
}
