//! Batch recommendation over many queries against one model.

use crate::engine::{recommend, RecommendationReport, Requirements};
use crate::error::EngineError;
use crate::knowledge::DecisionModel;
use crate::par;

/// Runs [`recommend`] for every query, on the rayon pool when the
/// `parallel` feature is enabled. Results keep the input order.
pub fn recommend_batch(
    model: &DecisionModel,
    queries: &[Requirements],
) -> Vec<Result<RecommendationReport, EngineError>> {
    par::map(queries, |q| recommend(model, q))
}

pub fn recommend_batch_sequential(
    model: &DecisionModel,
    queries: &[Requirements],
) -> Vec<Result<RecommendationReport, EngineError>> {
    par::map_sequential(queries, |q| recommend(model, q))
}
