use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::EngineError;
use crate::knowledge::{ContextFacts, DecisionModel};

/// A query: non-negative QA weights (absent = 0) plus project context.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Requirements {
    pub weights: BTreeMap<String, f64>,
    pub context: ContextFacts,
}

impl Requirements {
    pub fn new(context: ContextFacts) -> Self {
        Requirements {
            weights: BTreeMap::new(),
            context,
        }
    }

    pub fn with_weight(mut self, qa: &str, weight: f64) -> Self {
        self.weights.insert(qa.to_string(), weight);
        self
    }

    pub fn weight(&self, qa: &str) -> f64 {
        self.weights.get(qa).copied().unwrap_or(0.0)
    }

    /// Parses a requirements document, e.g.
    /// `{"weights": {"scalability": 1}, "context": {"team_size": "small_5_to_9"}}`.
    pub fn from_json(text: &str) -> Result<Self, EngineError> {
        serde_json::from_str(text).map_err(|e| EngineError::BadRequirements(e.to_string()))
    }

    /// Every weight must name a declared QA and be finite and non-negative.
    pub fn validate(&self, model: &DecisionModel) -> Result<(), EngineError> {
        for (qa, w) in &self.weights {
            if model.qa(qa).is_none() {
                return Err(EngineError::BadRequirements(format!(
                    "weights.{qa}: unknown quality attribute `{qa}`"
                )));
            }
            if !w.is_finite() || *w < 0.0 {
                return Err(EngineError::BadRequirements(format!(
                    "weights.{qa}: weight must be a finite non-negative number, got {w}"
                )));
            }
        }
        Ok(())
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("requirements serialize")
    }

    /// SHA-256 of the canonical JSON, hex encoded.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.canonical_json().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}
