//! Decision support for decomposing applications into microservices.
//!
//! [`knowledge`] holds the decision-model schema, the `.dmkb.json` format
//! and the built-in model; [`engine`] evaluates a model against weighted
//! quality-attribute requirements and project context.

pub mod batch;
pub mod dot;
pub mod engine;
pub mod error;
pub mod knowledge;
mod par;

pub use engine::{
    eligible_patterns, explain, recommend, tradeoff_matrix, what_if, RecommendationReport,
    Requirements, TradeoffMatrix, WhatIfDiff,
};
pub use error::{EngineError, KbError};
pub use knowledge::{
    default_model, load_model, serialize_model, validate_model, DecisionModel, ValidationReport,
};
