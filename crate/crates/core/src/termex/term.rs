use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("term has no tokens")]
    Empty,
    #[error("head index {head} out of range for {len} tokens")]
    HeadOutOfRange { head: usize, len: usize },
    #[error("token {0:?} is not a lowercase single word")]
    BadToken(String),
}

/// A normalized term: lowercase word forms and the position of the head.
///
/// Ordering and equality follow the canonical text first, so sorted
/// collections of terms are in canonical lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    canonical: String,
    tokens: Vec<String>,
    head: usize,
}

impl Term {
    pub fn new(tokens: Vec<String>, head: usize) -> Result<Self, TermError> {
        if tokens.is_empty() {
            return Err(TermError::Empty);
        }
        if head >= tokens.len() {
            return Err(TermError::HeadOutOfRange {
                head,
                len: tokens.len(),
            });
        }
        for t in &tokens {
            if t.is_empty() || t.chars().any(|c| c.is_whitespace() || c.is_uppercase()) {
                return Err(TermError::BadToken(t.clone()));
            }
        }
        Ok(Self {
            canonical: tokens.join(" "),
            tokens,
            head,
        })
    }

    /// Build a term from canonical text, inferring the head: the word
    /// before the first interior `of`, otherwise the last word.
    pub fn parse(canonical: &str) -> Result<Self, TermError> {
        let tokens: Vec<String> = canonical.split_whitespace().map(str::to_string).collect();
        let head = infer_head(&tokens);
        Self::new(tokens, head)
    }

    pub fn with_head(canonical: &str, head: usize) -> Result<Self, TermError> {
        Self::new(canonical.split_whitespace().map(str::to_string).collect(), head)
    }

    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn head_index(&self) -> usize {
        self.head
    }

    pub fn head_word(&self) -> &str {
        &self.tokens[self.head]
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_single_word(&self) -> bool {
        self.tokens.len() == 1
    }
}

pub(crate) fn infer_head<S: AsRef<str>>(tokens: &[S]) -> usize {
    let n = tokens.len();
    tokens
        .iter()
        .enumerate()
        .skip(1)
        .take(n.saturating_sub(2))
        .find(|(_, t)| t.as_ref() == "of")
        .map_or(n.saturating_sub(1), |(i, _)| i - 1)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_infers_head() {
        let t = Term::parse("universal classification scheme").unwrap();
        assert_eq!(t.head_index(), 2);
        assert_eq!(t.head_word(), "scheme");
        let t = Term::parse("organization of knowledge").unwrap();
        assert_eq!(t.head_word(), "organization");
        let t = Term::parse("library organization of knowledge of science").unwrap();
        assert_eq!(t.head_index(), 1);
        assert_eq!(Term::parse("of").unwrap().head_index(), 0);
        assert_eq!(Term::parse("knowledge of").unwrap().head_index(), 1);
    }

    #[test]
    fn rejects_bad_tokens() {
        assert_eq!(Term::parse("   "), Err(TermError::Empty));
        assert!(matches!(Term::parse("Data base"), Err(TermError::BadToken(_))));
        assert!(Term::new(vec!["a".into()], 1).is_err());
    }

    #[test]
    fn ordering_is_canonical() {
        let mut v = [
            Term::parse("knowledge organization system").unwrap(),
            Term::parse("classification").unwrap(),
            Term::parse("knowledge organization").unwrap(),
        ];
        v.sort();
        let c: Vec<&str> = v.iter().map(Term::canonical).collect();
        assert_eq!(
            c,
            [
                "classification",
                "knowledge organization",
                "knowledge organization system"
            ]
        );
    }
}
