use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::termex::Term;

/// Type of a terminological variation between two terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Spelling,
    Synonymy,
    ModifierExpansion,
    HeadExpansion,
    ModifierSubstitution,
    HeadSubstitution,
}

impl RelationKind {
    pub const ALL: [RelationKind; 6] = [
        RelationKind::Spelling,
        RelationKind::Synonymy,
        RelationKind::ModifierExpansion,
        RelationKind::HeadExpansion,
        RelationKind::ModifierSubstitution,
        RelationKind::HeadSubstitution,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationKind::Spelling => "spelling",
            RelationKind::Synonymy => "synonymy",
            RelationKind::ModifierExpansion => "modifier_expansion",
            RelationKind::HeadExpansion => "head_expansion",
            RelationKind::ModifierSubstitution => "modifier_substitution",
            RelationKind::HeadSubstitution => "head_substitution",
        }
    }

    /// Expansions point from the general term to the specific one; every
    /// other kind is symmetric.
    pub fn is_directed(self) -> bool {
        matches!(self, RelationKind::ModifierExpansion | RelationKind::HeadExpansion)
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown relation kind {s:?}"))
    }
}

/// A typed edge between two terms.
///
/// Directed kinds store `(general, specific)`; symmetric kinds store the
/// canonically smaller term as `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariantRelation {
    pub a: Term,
    pub b: Term,
    pub kind: RelationKind,
}

impl VariantRelation {
    /// Build a relation, putting symmetric pairs in canonical order.
    /// Returns `None` when both ends are the same term.
    pub fn new(a: Term, b: Term, kind: RelationKind) -> Option<Self> {
        if a == b {
            return None;
        }
        let (a, b) = if !kind.is_directed() && b < a { (b, a) } else { (a, b) };
        Some(Self { a, b, kind })
    }

    /// Whether this edge links `x` and `y`, in either direction.
    pub fn links(&self, x: &Term, y: &Term) -> bool {
        (&self.a == x && &self.b == y) || (&self.a == y && &self.b == x)
    }
}

impl fmt::Display for VariantRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.a, self.kind, self.b)
    }
}
