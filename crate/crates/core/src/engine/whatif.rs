use std::collections::BTreeMap;

use serde::Serialize;

use super::rank::{recommend, RecommendationReport};
use super::report::{sig6_opt, to_canonical_json};
use super::requirements::Requirements;
use crate::error::EngineError;
use crate::knowledge::DecisionModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Movement {
    Promoted,
    Demoted,
    Unchanged,
    Entered,
    Left,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WhatIfEntry {
    #[serde(rename = "pattern")]
    pub pattern_id: String,
    pub base_rank: Option<usize>,
    pub variant_rank: Option<usize>,
    #[serde(serialize_with = "sig6_opt")]
    pub base_score: Option<f64>,
    #[serde(serialize_with = "sig6_opt")]
    pub variant_score: Option<f64>,
    pub status: Movement,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WhatIfDiff {
    pub base_digest: String,
    pub variant_digest: String,
    /// Variant ranking first, then patterns that left in base rank order.
    pub entries: Vec<WhatIfEntry>,
}

impl WhatIfDiff {
    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    pub fn status(&self, pattern: &str) -> Option<Movement> {
        self.entries
            .iter()
            .find(|e| e.pattern_id == pattern)
            .map(|e| e.status)
    }
}

/// Runs both queries and classifies each pattern's rank movement.
pub fn what_if(
    model: &DecisionModel,
    base: &Requirements,
    variant: &Requirements,
) -> Result<WhatIfDiff, EngineError> {
    let b = recommend(model, base)?;
    let v = recommend(model, variant)?;
    Ok(diff_reports(&b, &v, base.digest(), variant.digest()))
}

pub fn diff_reports(
    base: &RecommendationReport,
    variant: &RecommendationReport,
    base_digest: String,
    variant_digest: String,
) -> WhatIfDiff {
    let base_by_id: BTreeMap<&str, (usize, f64)> = base
        .entries
        .iter()
        .map(|e| (e.pattern_id.as_str(), (e.rank, e.score)))
        .collect();
    let variant_ids: std::collections::BTreeSet<&str> = variant
        .entries
        .iter()
        .map(|e| e.pattern_id.as_str())
        .collect();

    let mut entries: Vec<WhatIfEntry> = variant
        .entries
        .iter()
        .map(|e| {
            let before = base_by_id.get(e.pattern_id.as_str());
            let status = match before {
                None => Movement::Entered,
                Some((r, _)) if e.rank < *r => Movement::Promoted,
                Some((r, _)) if e.rank > *r => Movement::Demoted,
                Some(_) => Movement::Unchanged,
            };
            WhatIfEntry {
                pattern_id: e.pattern_id.clone(),
                base_rank: before.map(|b| b.0),
                variant_rank: Some(e.rank),
                base_score: before.map(|b| b.1),
                variant_score: Some(e.score),
                status,
            }
        })
        .collect();
    entries.extend(
        base.entries
            .iter()
            .filter(|e| !variant_ids.contains(e.pattern_id.as_str()))
            .map(|e| WhatIfEntry {
                pattern_id: e.pattern_id.clone(),
                base_rank: Some(e.rank),
                variant_rank: None,
                base_score: Some(e.score),
                variant_score: None,
                status: Movement::Left,
            }),
    );
    WhatIfDiff {
        base_digest,
        variant_digest,
        entries,
    }
}
