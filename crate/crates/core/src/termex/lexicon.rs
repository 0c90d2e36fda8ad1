//! POS lexicon and plural-exception files.
//!
//! Both are UTF-8 text, one `key<TAB>value` entry per line, `#` comments.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const BUNDLED_POS: &str = include_str!("../../data/pos_lexicon.tsv");
const BUNDLED_PLURALS: &str = include_str!("../../data/plural_exceptions.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PosTag {
    Noun,
    Adj,
    Verb,
    Prep,
    Det,
    Other,
}

impl PosTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Adj => "ADJ",
            PosTag::Verb => "VERB",
            PosTag::Prep => "PREP",
            PosTag::Det => "DET",
            PosTag::Other => "OTHER",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "NOUN" => PosTag::Noun,
            "ADJ" => PosTag::Adj,
            "VERB" => PosTag::Verb,
            "PREP" => PosTag::Prep,
            "DET" => PosTag::Det,
            "OTHER" => PosTag::Other,
            _ => return Err(format!("unknown POS tag {s:?}")),
        })
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {path}: {source}")]
    Missing { path: PathBuf, source: std::io::Error },
    #[error("{name} line {line}: {message}")]
    Syntax { name: String, line: usize, message: String },
}

fn entries<'a>(
    name: &'a str,
    text: &'a str,
) -> impl Iterator<Item = Result<(usize, &'a str, &'a str), LexiconError>> + 'a {
    text.lines().enumerate().filter_map(move |(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let mut parts = line.split('\t');
        let (Some(k), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Some(Err(LexiconError::Syntax {
                name: name.to_string(),
                line: i + 1,
                message: "expected exactly two tab-separated fields".into(),
            }));
        };
        Some(Ok((i + 1, k.trim(), v.trim())))
    })
}

fn read_file(path: &Path) -> Result<String, LexiconError> {
    std::fs::read_to_string(path).map_err(|source| LexiconError::Missing {
        path: path.to_path_buf(),
        source,
    })
}

/// Word → tag map.
#[derive(Debug, Clone, Default)]
pub struct PosLexicon {
    words: HashMap<String, PosTag>,
}

impl PosLexicon {
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut words = HashMap::new();
        for entry in entries("POS lexicon", text) {
            let (line, word, tag) = entry?;
            let tag = tag.parse().map_err(|message| LexiconError::Syntax {
                name: "POS lexicon".into(),
                line,
                message,
            })?;
            words.insert(word.to_lowercase(), tag);
        }
        Ok(Self { words })
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        Self::parse(&read_file(path)?)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_POS).expect("bundled POS lexicon is valid")
    }

    pub fn get(&self, word: &str) -> Option<PosTag> {
        self.words.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Rule-based singularization with an irregular-plural exceptions table.
#[derive(Debug, Clone, Default)]
pub struct PluralRules {
    exceptions: HashMap<String, String>,
}

impl PluralRules {
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut raw = HashMap::new();
        for entry in entries("plural exceptions", text) {
            let (_, plural, singular) = entry?;
            raw.insert(plural.to_lowercase(), singular.to_lowercase());
        }
        Ok(Self::close(raw))
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        Self::parse(&read_file(path)?)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_PLURALS).expect("bundled plural exceptions are valid")
    }

    /// Resolve chains (`a→b`, `b→c` becomes `a→c`) and pin every target
    /// that the rule chain would alter, so singularization is idempotent.
    fn close(raw: HashMap<String, String>) -> Self {
        let mut exceptions = HashMap::with_capacity(raw.len());
        for (plural, first) in &raw {
            let mut target = first.clone();
            let mut hops = 0;
            while let Some(next) = raw.get(&target) {
                if *next == target || hops > raw.len() {
                    break;
                }
                target = next.clone();
                hops += 1;
            }
            exceptions.insert(plural.clone(), target);
        }
        let targets: Vec<String> = exceptions.values().cloned().collect();
        for t in targets {
            if !exceptions.contains_key(&t) && apply_rules(&t) != t {
                exceptions.insert(t.clone(), t);
            }
        }
        // a cycle leaves a target mapping elsewhere; pin it to itself
        let keys: Vec<String> = exceptions.keys().cloned().collect();
        for k in keys {
            let v = exceptions[&k].clone();
            if exceptions.get(&v).is_some_and(|w| *w != v) {
                exceptions.insert(v.clone(), v);
            }
        }
        Self { exceptions }
    }

    pub fn singularize(&self, word: &str) -> String {
        let stemmed = match self.exceptions.get(word) {
            Some(s) => return s.clone(),
            None => apply_rules(word),
        };
        match self.exceptions.get(&stemmed) {
            Some(s) => s.clone(),
            None => stemmed,
        }
    }
}

/// The plural rule chain: `-ies→-y`; `-ses` drops `-es` when that leaves
/// `-ss/-us/-is`, otherwise only `-s`; `-xes/-zes/-ches/-shes` drop `-es`;
/// else a final `-s` is dropped when the word is longer than three
/// characters and does not end in `-ss/-us/-is`.
pub fn apply_rules(word: &str) -> String {
    let n = word.len();
    if !word.is_ascii() {
        return plain_s_rule(word);
    }
    if n > 4 && word.ends_with("ies") {
        return format!("{}y", &word[..n - 3]);
    }
    if n > 3 && word.ends_with("ses") {
        let short = &word[..n - 2];
        if short.len() >= 3 && (short.ends_with("ss") || short.ends_with("us") || short.ends_with("is")) {
            return short.to_string();
        }
        return word[..n - 1].to_string();
    }
    if n > 3 && ["xes", "zes", "ches", "shes"].iter().any(|s| word.ends_with(s)) {
        return word[..n - 2].to_string();
    }
    plain_s_rule(word)
}

fn plain_s_rule(word: &str) -> String {
    let n = word.chars().count();
    if n > 3 && word.ends_with('s') && !(word.ends_with("ss") || word.ends_with("us") || word.ends_with("is")) {
        let mut w = word.to_string();
        w.pop();
        return w;
    }
    word.to_string()
}

/// POS lexicon plus plural rules: everything term extraction needs.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    pub pos: PosLexicon,
    pub plurals: PluralRules,
}

impl Lexicon {
    pub fn bundled() -> Self {
        Self {
            pos: PosLexicon::bundled(),
            plurals: PluralRules::bundled(),
        }
    }

    /// Load from files; `None` selects the bundled data for that part.
    pub fn load(pos: Option<&Path>, plurals: Option<&Path>) -> Result<Self, LexiconError> {
        Ok(Self {
            pos: match pos {
                Some(p) => PosLexicon::load(p)?,
                None => PosLexicon::bundled(),
            },
            plurals: match plurals {
                Some(p) => PluralRules::load(p)?,
                None => PluralRules::bundled(),
            },
        })
    }
}
