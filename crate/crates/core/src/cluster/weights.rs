use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::variants::RelationKind;

/// Clustering parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RelationWeights {
    /// Kinds whose edges join terms unconditionally in the first phase.
    pub tight_kinds: BTreeSet<RelationKind>,
    /// Edge weight per kind in the merge-phase similarity.
    pub weight: BTreeMap<RelationKind, f64>,
    /// Similarity must be strictly above this to nominate a neighbour.
    pub merge_threshold: f64,
    pub max_iterations: usize,
}

impl Default for RelationWeights {
    fn default() -> Self {
        let weight = RelationKind::ALL
            .into_iter()
            .map(|k| (k, if k == RelationKind::HeadExpansion { 2.0 } else { 1.0 }))
            .collect();
        Self {
            tight_kinds: [
                RelationKind::Spelling,
                RelationKind::Synonymy,
                RelationKind::ModifierExpansion,
            ]
            .into(),
            weight,
            merge_threshold: 0.05,
            max_iterations: 4,
        }
    }
}

impl RelationWeights {
    pub fn validate(&self) -> Result<(), String> {
        if self.tight_kinds.is_empty() {
            return Err("tight_kinds must not be empty".into());
        }
        for k in RelationKind::ALL {
            match self.weight.get(&k) {
                None => return Err(format!("no weight for relation kind {k}")),
                Some(w) if !w.is_finite() || *w < 0.0 => {
                    return Err(format!("weight for {k} must be a non-negative number, got {w}"))
                }
                _ => {}
            }
        }
        if !self.merge_threshold.is_finite() || self.merge_threshold < 0.0 {
            return Err(format!(
                "merge_threshold must be non-negative, got {}",
                self.merge_threshold
            ));
        }
        if self.max_iterations == 0 {
            return Err("max_iterations must be at least 1".into());
        }
        Ok(())
    }

    pub fn weight_of(&self, kind: RelationKind) -> f64 {
        self.weight.get(&kind).copied().unwrap_or(0.0)
    }
}
