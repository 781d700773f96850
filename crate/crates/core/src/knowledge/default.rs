use std::sync::OnceLock;

use super::format::load_model;
use super::model::DecisionModel;

/// The built-in application-decomposition model, in canonical form.
pub const DEFAULT_MODEL_DOCUMENT: &str = include_str!("../../data/default.dmkb.json");

/// Team size routes the flow: a small team chooses among five patterns, an
/// undefined team size routes on legacy code and DFD availability, and a
/// large team reaches a terminal with no candidates.
pub fn default_model() -> DecisionModel {
    static MODEL: OnceLock<DecisionModel> = OnceLock::new();
    MODEL
        .get_or_init(|| load_model(DEFAULT_MODEL_DOCUMENT).expect("built-in model loads"))
        .clone()
}
