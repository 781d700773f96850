//! Decision-model schema, the `.dmkb.json` document format, structural
//! validation and the built-in application-decomposition model.

mod default;
mod format;
mod model;
mod validate;

pub use default::{default_model, DEFAULT_MODEL_DOCUMENT};
pub use format::{from_document, load_model, serialize_model, to_document, ModelDocument};
pub use model::*;
pub use validate::{validate_model, Finding, FindingSeverity, ValidationReport};
