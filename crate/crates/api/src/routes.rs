use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::Response;
use msa_decide_core::engine::report::to_canonical_json;
use msa_decide_core::knowledge::{to_document, Fact, Polarity};
use msa_decide_core::{recommend, tradeoff_matrix, what_if, DecisionModel, Requirements};
use serde_json::{json, Value};

use crate::error::ApiError;
use crate::json_response;

/// Loaded model plus the bodies that never change while it is served.
pub struct AppState {
    pub model: DecisionModel,
    model_body: String,
    matrix_body: String,
}

impl AppState {
    pub fn new(model: DecisionModel) -> Arc<Self> {
        let qa_group = |pol: Polarity| -> Vec<Value> {
            model
                .qas()
                .iter()
                .filter(|q| q.polarity == pol)
                .map(|q| json!({"id": q.id, "name": q.name}))
                .collect()
        };
        let facts: Vec<Value> = Fact::ALL
            .iter()
            .map(|f| {
                json!({
                    "name": f.as_str(),
                    "values": f.domain().iter().map(|v| v.as_str()).collect::<Vec<_>>(),
                    "default": f.default_value().as_str(),
                })
            })
            .collect();
        let body = json!({
            "model": to_document(&model),
            "qa_catalog": {"benefit": qa_group(Polarity::Benefit), "cost": qa_group(Polarity::Cost)},
            "facts": facts,
        });
        let model_body = to_canonical_json(&body);
        let matrix_body = tradeoff_matrix(&model).to_json();
        Arc::new(AppState {
            model,
            model_body,
            matrix_body,
        })
    }
}

type Shared = State<Arc<AppState>>;

pub async fn health() -> Response {
    json_response(StatusCode::OK, to_canonical_json(&json!({"status": "ok"})))
}

pub async fn model(State(state): Shared) -> Response {
    json_response(StatusCode::OK, state.model_body.clone())
}

pub async fn matrix(State(state): Shared) -> Response {
    json_response(StatusCode::OK, state.matrix_body.clone())
}

fn parse_requirements(
    value: Value,
    field: Option<&str>,
    state: &AppState,
) -> Result<Requirements, ApiError> {
    let located = |msg: String| match field {
        Some(f) => {
            ApiError::bad_requirements(format!("{f}: {msg}")).with_details(json!({"field": f}))
        }
        None => ApiError::bad_requirements(msg),
    };
    let req: Requirements = serde_json::from_value(value).map_err(|e| located(e.to_string()))?;
    req.validate(&state.model).map_err(|e| match e {
        msa_decide_core::EngineError::BadRequirements(m) => located(m),
        other => other.into(),
    })?;
    Ok(req)
}

fn parse_body(body: &Bytes) -> Result<Value, ApiError> {
    serde_json::from_slice(body)
        .map_err(|e| ApiError::bad_requirements(format!("malformed JSON body: {e}")))
}

pub async fn recommend_handler(State(state): Shared, body: Bytes) -> Result<Response, ApiError> {
    let req = parse_requirements(parse_body(&body)?, None, &state)?;
    let report = recommend(&state.model, &req)?;
    Ok(json_response(StatusCode::OK, report.to_json()))
}

pub async fn whatif_handler(State(state): Shared, body: Bytes) -> Result<Response, ApiError> {
    let Value::Object(mut fields) = parse_body(&body)? else {
        return Err(ApiError::bad_requirements(
            "body must be an object with `base` and `variant`",
        ));
    };
    if let Some(extra) = fields.keys().find(|k| *k != "base" && *k != "variant") {
        return Err(
            ApiError::bad_requirements(format!("unknown field `{extra}`"))
                .with_details(json!({"field": extra})),
        );
    }
    let mut take = |name: &str| {
        fields.remove(name).ok_or_else(|| {
            ApiError::bad_requirements(format!("missing field `{name}`"))
                .with_details(json!({"field": name}))
        })
    };
    let (base, variant) = (take("base")?, take("variant")?);
    let base = parse_requirements(base, Some("base"), &state)?;
    let variant = parse_requirements(variant, Some("variant"), &state)?;
    let diff = what_if(&state.model, &base, &variant)?;
    Ok(json_response(StatusCode::OK, diff.to_json()))
}

pub async fn not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "E_NOT_FOUND", "no such endpoint")
}

pub async fn method_not_allowed() -> ApiError {
    ApiError::new(
        StatusCode::METHOD_NOT_ALLOWED,
        "E_METHOD_NOT_ALLOWED",
        "method not allowed for this endpoint",
    )
}
