//! Terminological variation: spelling, synonymy, lexical inclusion and
//! substitution relations, and the typed term graph built from them.

mod detect;
mod graph;
mod kind;
mod synlex;

pub use detect::{
    classify, detect_inclusion, detect_spelling, detect_substitution, detect_synonymy, spelling_key, Substitution,
};
pub use graph::{build_graph, RelationConfig, TermGraph};
pub use kind::{RelationKind, VariantRelation};
pub use synlex::{SynLex, SynLexWarning};
