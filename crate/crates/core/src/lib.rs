//! Topic maps from bibliographic records.
//!
//! The pipeline reads exported bibliographic records, extracts multiword
//! domain terms with a lexicon-driven noun-phrase grammar, links terms by
//! typed terminological-variation relations (spelling, synonymy, lexical
//! inclusion and substitution), clusters the resulting graph and writes
//! Pajek / GraphML / JSON maps together with cross-period topic comparisons.
//!
//! ```
//! use topicmap::variants::{detect_inclusion, RelationKind};
//! use topicmap::termex::Term;
//!
//! let general = Term::parse("classification scheme").unwrap();
//! let specific = Term::parse("universal classification scheme").unwrap();
//! let rel = detect_inclusion(&general, &specific).unwrap();
//! assert_eq!(rel.kind, RelationKind::ModifierExpansion);
//! ```

pub mod cluster;
pub mod config;
pub mod corpus;
pub mod dump;
pub mod mapout;
pub mod pipeline;
pub mod synth;
pub mod termex;
pub mod variants;

pub use cluster::{Cluster, ClusterGraph, RelationWeights};
pub use config::PipelineConfig;
pub use corpus::{CorpusStats, PeriodSpec, Record};
pub use pipeline::{run_pipeline, PipelineError};
pub use termex::{Term, TermIndex};
pub use variants::{RelationKind, SynLex, TermGraph, VariantRelation};
