use std::collections::{BTreeSet, HashMap};
use std::path::Path;

/// A problem found while loading a synset file. The offending entry is
/// skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynLexWarning {
    pub line: usize,
    pub message: String,
}

/// Word-level synonym sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynLex {
    synsets: Vec<BTreeSet<String>>,
    membership: HashMap<String, BTreeSet<usize>>,
}

impl SynLex {
    /// Parse a synset file: one comma-separated set per line, `#` starts a
    /// comment, blank lines are ignored. Words are trimmed and lowercased.
    /// Lines without any word and entries containing whitespace are
    /// skipped with a warning.
    pub fn parse(text: &str) -> (Self, Vec<SynLexWarning>) {
        let mut lex = SynLex::default();
        let mut warnings = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut set = BTreeSet::new();
            for entry in line.split(',') {
                let word = entry.trim().to_lowercase();
                if word.is_empty() {
                    continue;
                }
                if word.contains(char::is_whitespace) {
                    warnings.push(SynLexWarning {
                        line: i + 1,
                        message: format!("entry {word:?} is not a single word"),
                    });
                    continue;
                }
                set.insert(word);
            }
            if set.is_empty() {
                warnings.push(SynLexWarning {
                    line: i + 1,
                    message: "empty synset".into(),
                });
                continue;
            }
            lex.push(set);
        }
        (lex, warnings)
    }

    pub fn load(path: &Path) -> std::io::Result<(Self, Vec<SynLexWarning>)> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn bundled() -> Self {
        Self::parse(include_str!("../../data/synsets.txt")).0
    }

    pub fn from_sets<I, S, W>(sets: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = W>,
        W: AsRef<str>,
    {
        let mut lex = SynLex::default();
        for set in sets {
            let set: BTreeSet<String> = set.into_iter().map(|w| w.as_ref().trim().to_lowercase()).collect();
            if !set.is_empty() {
                lex.push(set);
            }
        }
        lex
    }

    fn push(&mut self, set: BTreeSet<String>) {
        let id = self.synsets.len();
        for w in &set {
            self.membership.entry(w.clone()).or_default().insert(id);
        }
        self.synsets.push(set);
    }

    pub fn synsets(&self) -> &[BTreeSet<String>] {
        &self.synsets
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    /// Ids of the synsets containing `word`.
    pub fn synsets_of(&self, word: &str) -> Option<&BTreeSet<usize>> {
        self.membership.get(word)
    }

    /// Whether two distinct words share a synset.
    pub fn are_synonyms(&self, x: &str, y: &str) -> bool {
        if x == y {
            return false;
        }
        match (self.membership.get(x), self.membership.get(y)) {
            (Some(sx), Some(sy)) => !sx.is_disjoint(sy),
            _ => false,
        }
    }

    /// Canonical text form: one line per synset in load order, words
    /// sorted and comma-joined.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for set in &self.synsets {
            let words: Vec<&str> = set.iter().map(String::as_str).collect();
            out.push_str(&words.join(","));
            out.push('\n');
        }
        out
    }
}
