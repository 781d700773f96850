//! Evaluation of a decision model against requirements: gateway traversal,
//! weighted scoring, ranking, trade-off matrix, what-if diffing and
//! explanations.

mod explain;
pub mod guard;
mod matrix;
mod rank;
pub mod report;
mod requirements;
mod score;
mod traverse;
mod whatif;

use serde::{Serialize, Serializer};

pub use explain::explain;
pub use guard::{eval_conjunction, eval_guard, Truth};
pub use matrix::{tradeoff_matrix, Cell, TradeoffMatrix};
pub use rank::{model_version, rank_order, recommend, RecommendationEntry, RecommendationReport};
pub use requirements::Requirements;
pub use score::{score_pattern, Contribution, ContributionStatus, PatternScore};
pub use traverse::{
    activate, eligible_patterns, ActivatedEdge, EdgeOutcome, Eligibility, EligibilityTrace,
    EligiblePattern, Exclusion, ExclusionReason,
};
pub use whatif::{diff_reports, what_if, Movement, WhatIfDiff, WhatIfEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WarningCode {
    ContextIncomplete,
    SoftConstraint,
    ConditionalImpactUnknown,
    NoCandidates,
}

impl WarningCode {
    pub fn as_str(self) -> &'static str {
        match self {
            WarningCode::ContextIncomplete => "W_CONTEXT_INCOMPLETE",
            WarningCode::SoftConstraint => "W_SOFT_CONSTRAINT",
            WarningCode::ConditionalImpactUnknown => "W_CONDITIONAL_IMPACT_UNKNOWN",
            WarningCode::NoCandidates => "W_NO_CANDIDATES",
        }
    }
}

impl Serialize for WarningCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub code: WarningCode,
    pub message: String,
}
