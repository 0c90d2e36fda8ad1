//! Pipeline configuration file (TOML).
//!
//! ```toml
//! [input]
//! paths = ["corpus.isi"]
//! format = "auto"            # "isi", "jsonl" or "auto" (by extension)
//!
//! [[period]]
//! label = "1988-1997"
//! start_year = 1988
//! end_year = 1997
//!
//! [lexicons]                 # all optional; bundled data when omitted
//! pos = "pos.tsv"
//! plurals = "plurals.tsv"
//! synsets = "synsets.txt"
//!
//! [extract]
//! max_term_len = 6
//! min_doc_freq = 2
//! nested_subterms = true
//!
//! [relations]
//! enabled = ["spelling", "synonymy", "modifier_expansion",
//!            "head_expansion", "modifier_substitution", "head_substitution"]
//! tight_kinds = ["spelling", "synonymy", "modifier_expansion"]
//! merge_threshold = 0.05
//! max_iterations = 4
//! [relations.weight]         # kinds left out keep their default weight
//! head_expansion = 2.0
//!
//! [display]
//! top_k = 40
//! min_size = 2
//! clu_mode = "singleton"     # or "component"
//!
//! [output]
//! dir = "out"
//! formats = ["pajek", "graphml", "json"]
//! ```
//!
//! Relative paths are resolved against the directory of the config file.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cluster::RelationWeights;
use crate::corpus::{validate_periods, PeriodSpec};
use crate::mapout::CluMode;
use crate::termex::ExtractConfig;
use crate::variants::{RelationConfig, RelationKind};

pub const MAX_TERM_LEN_LIMIT: usize = 16;
pub const MAX_ITERATIONS_LIMIT: usize = 1000;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("config syntax: {0}")]
    Syntax(String),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    #[default]
    Auto,
    Isi,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Pajek,
    Graphml,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSection {
    pub paths: Vec<PathBuf>,
    #[serde(default)]
    pub format: InputFormat,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexiconSection {
    pub pos: Option<PathBuf>,
    pub plurals: Option<PathBuf>,
    pub synsets: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RelationSection {
    pub enabled: BTreeSet<RelationKind>,
    pub tight_kinds: BTreeSet<RelationKind>,
    pub weight: BTreeMap<RelationKind, f64>,
    pub merge_threshold: f64,
    pub max_iterations: usize,
}

impl Default for RelationSection {
    fn default() -> Self {
        let w = RelationWeights::default();
        Self {
            enabled: RelationConfig::default().enabled,
            tight_kinds: w.tight_kinds,
            weight: w.weight,
            merge_threshold: w.merge_threshold,
            max_iterations: w.max_iterations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DisplaySection {
    pub top_k: usize,
    pub min_size: usize,
    pub clu_mode: CluMode,
}

impl Default for DisplaySection {
    fn default() -> Self {
        Self {
            top_k: 40,
            min_size: 2,
            clu_mode: CluMode::Singleton,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub formats: BTreeSet<OutputFormat>,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            formats: [OutputFormat::Pajek, OutputFormat::Graphml, OutputFormat::Json].into(),
        }
    }
}

/// Everything one pipeline run needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub input: InputSection,
    #[serde(rename = "period")]
    pub periods: Vec<PeriodSpec>,
    #[serde(default)]
    pub lexicons: LexiconSection,
    #[serde(default)]
    pub extract: ExtractConfig,
    #[serde(default)]
    pub relations: RelationSection,
    #[serde(default)]
    pub display: DisplaySection,
    #[serde(default)]
    pub output: OutputSection,
    /// Directory relative paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl PipelineConfig {
    /// Parse config text; relative paths will resolve against `base_dir`.
    /// Only syntax is checked here; see [`PipelineConfig::validate`].
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, ConfigError> {
        let mut cfg: PipelineConfig = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        cfg.base_dir = base_dir.to_path_buf();
        Ok(cfg)
    }

    /// Read, parse and validate a config file.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let cfg = Self::parse(&text, &base)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn input_paths(&self) -> Vec<PathBuf> {
        self.input.paths.iter().map(|p| self.resolve(p)).collect()
    }

    pub fn output_dir(&self) -> PathBuf {
        self.resolve(&self.output.dir)
    }

    pub fn relation_config(&self) -> RelationConfig {
        RelationConfig {
            enabled: self.relations.enabled.clone(),
        }
    }

    /// Clustering weights, with defaults for kinds the file leaves out.
    pub fn relation_weights(&self) -> RelationWeights {
        let mut weight = RelationWeights::default().weight;
        weight.extend(self.relations.weight.iter().map(|(k, w)| (*k, *w)));
        RelationWeights {
            tight_kinds: self.relations.tight_kinds.clone(),
            weight,
            merge_threshold: self.relations.merge_threshold,
            max_iterations: self.relations.max_iterations,
        }
    }

    /// Check referenced files and parameter ranges.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if self.input.paths.is_empty() {
            return bad("input.paths is empty".into());
        }
        for p in self.input_paths() {
            if !p.is_file() {
                return bad(format!("input file {} does not exist", p.display()));
            }
        }
        validate_periods(&self.periods).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let lex = &self.lexicons;
        for (name, p) in [("pos", &lex.pos), ("plurals", &lex.plurals), ("synsets", &lex.synsets)] {
            if let Some(p) = p {
                let p = self.resolve(p);
                if !p.is_file() {
                    return bad(format!("lexicons.{name} file {} does not exist", p.display()));
                }
            }
        }
        let x = &self.extract;
        if !(1..=MAX_TERM_LEN_LIMIT).contains(&x.max_term_len) {
            return bad(format!("extract.max_term_len must be in 1..={MAX_TERM_LEN_LIMIT}"));
        }
        if x.min_doc_freq == 0 {
            return bad("extract.min_doc_freq must be at least 1".into());
        }
        if self.relations.max_iterations > MAX_ITERATIONS_LIMIT {
            return bad(format!(
                "relations.max_iterations must be at most {MAX_ITERATIONS_LIMIT}"
            ));
        }
        self.relation_weights()
            .validate()
            .map_err(|e| ConfigError::Invalid(format!("relations: {e}")))?;
        if self.display.top_k == 0 || self.display.min_size == 0 {
            return bad("display.top_k and display.min_size must be at least 1".into());
        }
        Ok(())
    }

    /// Non-fatal oddities worth reporting.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.relations.enabled.is_empty() {
            out.push("all relation kinds are disabled; the term graph will have no edges".into());
        }
        out
    }

    /// SHA-256 over every setting that can change the artifacts. The
    /// output directory and the location of the config file are excluded.
    pub fn semantic_hash(&self) -> String {
        let mut semantic = self.clone();
        semantic.output.dir = PathBuf::new();
        semantic.relations.weight = self.relation_weights().weight;
        let json = serde_json::to_string(&semantic).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}
