use std::cmp::Ordering;

use serde::Serialize;

use super::report::{sig6, to_canonical_json};
use super::requirements::Requirements;
use super::score::{score_pattern, Contribution};
use super::traverse::{eligible_patterns, EligibilityTrace};
use super::{Warning, WarningCode};
use crate::error::EngineError;
use crate::knowledge::{DecisionModel, PatternKind};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecommendationEntry {
    pub rank: usize,
    #[serde(rename = "pattern")]
    pub pattern_id: String,
    pub name: String,
    pub kind: PatternKind,
    #[serde(serialize_with = "sig6")]
    pub score: f64,
    pub positive_hits: usize,
    pub negative_impacts: usize,
    pub contributions: Vec<Contribution>,
    pub warnings: Vec<Warning>,
    /// Complementary patterns that are eligible for the same query.
    pub complements: Vec<String>,
    /// Complementary patterns the query rules out.
    pub excluded_complements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecommendationReport {
    pub model_version: String,
    pub entries: Vec<RecommendationEntry>,
    pub trace: EligibilityTrace,
    #[serde(rename = "warnings")]
    pub global_warnings: Vec<Warning>,
}

impl RecommendationReport {
    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    pub fn ranking(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.pattern_id.as_str()).collect()
    }

    pub fn entry(&self, pattern: &str) -> Option<&RecommendationEntry> {
        self.entries.iter().find(|e| e.pattern_id == pattern)
    }

    pub fn has_warning(&self, code: WarningCode) -> bool {
        self.global_warnings.iter().any(|w| w.code == code)
    }
}

/// Total order on entries: higher score, then more weighted positive hits,
/// then fewer negative impacts overall, then pattern id ascending.
pub fn rank_order(a: &RecommendationEntry, b: &RecommendationEntry) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then(b.positive_hits.cmp(&a.positive_hits))
        .then(a.negative_impacts.cmp(&b.negative_impacts))
        .then_with(|| a.pattern_id.cmp(&b.pattern_id))
}

pub fn model_version(model: &DecisionModel) -> String {
    format!("{}@{}", model.metadata().id, model.metadata().version)
}

/// Scores every eligible pattern and ranks them.
pub fn recommend(
    model: &DecisionModel,
    requirements: &Requirements,
) -> Result<RecommendationReport, EngineError> {
    requirements.validate(model)?;
    let eligibility = eligible_patterns(model, &requirements.context)?;

    let mut entries: Vec<RecommendationEntry> = eligibility
        .patterns
        .iter()
        .map(|ep| {
            let pattern = model.pattern(&ep.id).expect("eligible pattern exists");
            let scored = score_pattern(pattern, &requirements.weights, &requirements.context);
            let (complements, excluded_complements) = pattern
                .complements
                .iter()
                .cloned()
                .partition(|c| eligibility.get(c).is_some());
            let mut warnings = ep.warnings.clone();
            warnings.extend(scored.warnings);
            RecommendationEntry {
                rank: 0,
                pattern_id: pattern.id.clone(),
                name: pattern.name.clone(),
                kind: pattern.kind,
                score: scored.score,
                positive_hits: scored.positive_hits,
                negative_impacts: pattern.negative_impacts(),
                contributions: scored.contributions,
                warnings,
                complements,
                excluded_complements,
            }
        })
        .collect();
    entries.sort_by(rank_order);
    for (i, e) in entries.iter_mut().enumerate() {
        e.rank = i + 1;
    }

    let mut global_warnings = Vec::new();
    if entries.is_empty() {
        global_warnings.push(Warning {
            code: WarningCode::NoCandidates,
            message: "the decision model offers no pattern for this context".into(),
        });
    }

    Ok(RecommendationReport {
        model_version: model_version(model),
        entries,
        trace: eligibility.trace,
        global_warnings,
    })
}
