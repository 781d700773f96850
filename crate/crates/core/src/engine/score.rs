use std::collections::BTreeMap;

use serde::Serialize;

use super::guard::{eval_conjunction, Truth};
use super::report::sig6;
use super::{Warning, WarningCode};
use crate::knowledge::{ContextFacts, Effect, Pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContributionStatus {
    Applied,
    /// Conditional impact whose condition depends on unknown facts.
    Suppressed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contribution {
    pub qa: String,
    #[serde(serialize_with = "sig6")]
    pub weight: f64,
    pub effect: Effect,
    #[serde(rename = "contribution", serialize_with = "sig6")]
    pub value: f64,
    pub status: ContributionStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternScore {
    pub score: f64,
    pub contributions: Vec<Contribution>,
    pub warnings: Vec<Warning>,
    /// Applied positive contributions with non-zero weight.
    pub positive_hits: usize,
}

/// Weighted additive score: each impact adds `±weight(qa)`.
///
/// Conditional impacts count only when their condition holds. An unknown
/// condition contributes 0 and is listed as a suppressed term with
/// `W_CONDITIONAL_IMPACT_UNKNOWN` (only when the QA carries weight).
///
/// Applied terms are netted per QA first, so the score is
/// `Σ weight(qa) · (positives − negatives)` over QAs in id order. Opposite
/// terms on one QA cancel exactly, which keeps the floating-point score
/// monotone in every weight.
pub fn score_pattern(
    pattern: &Pattern,
    weights: &BTreeMap<String, f64>,
    context: &ContextFacts,
) -> PatternScore {
    let mut net: BTreeMap<&str, (f64, i32)> = BTreeMap::new();
    let mut contributions = Vec::new();
    let mut warnings = Vec::new();
    let mut positive_hits = 0;

    for impact in &pattern.impacts {
        let weight = weights.get(&impact.qa).copied().unwrap_or(0.0);
        if weight == 0.0 {
            continue;
        }
        let truth = impact
            .condition
            .as_ref()
            .map_or(Truth::True, |c| eval_conjunction(c, context));
        let condition = impact.condition.as_ref().map(|c| c.to_string());
        match truth {
            Truth::True => {
                let value = impact.effect.sign() * weight;
                let slot = net.entry(impact.qa.as_str()).or_insert((weight, 0));
                slot.1 += match impact.effect {
                    Effect::Positive => 1,
                    Effect::Negative => -1,
                };
                if impact.effect == Effect::Positive {
                    positive_hits += 1;
                }
                contributions.push(Contribution {
                    qa: impact.qa.clone(),
                    weight,
                    effect: impact.effect,
                    value,
                    status: ContributionStatus::Applied,
                    condition,
                });
            }
            Truth::Unknown => {
                warnings.push(Warning {
                    code: WarningCode::ConditionalImpactUnknown,
                    message: format!(
                        "{} impact on `{}` applies only if {}; condition unknown, counted as 0",
                        match impact.effect {
                            Effect::Positive => "positive",
                            Effect::Negative => "negative",
                        },
                        impact.qa,
                        condition.as_deref().unwrap_or("true")
                    ),
                });
                contributions.push(Contribution {
                    qa: impact.qa.clone(),
                    weight,
                    effect: impact.effect,
                    value: 0.0,
                    status: ContributionStatus::Suppressed,
                    condition,
                });
            }
            Truth::False => {}
        }
    }

    let score = net
        .values()
        .filter(|(_, k)| *k != 0)
        .fold(0.0, |acc, (w, k)| acc + f64::from(*k) * w);
    PatternScore {
        score,
        contributions,
        warnings,
        positive_hits,
    }
}
