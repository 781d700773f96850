use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use msa_decide_core::EngineError;
use serde::Serialize;

use crate::json_response;

/// Body of every non-2xx response.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code: code.to_string(),
            message: message.into(),
            details: None,
        }
    }

    pub fn with_details(mut self, details: serde_json::Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn bad_requirements(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "E_BAD_REQUIREMENTS", message)
    }
}

impl From<EngineError> for ApiError {
    fn from(e: EngineError) -> Self {
        let status = match e {
            EngineError::BadRequirements(_) => StatusCode::BAD_REQUEST,
            EngineError::AmbiguousExclusive { .. } => StatusCode::UNPROCESSABLE_ENTITY,
            EngineError::UnresolvedRef { .. } => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError::new(status, e.code(), e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        json_response(
            self.status,
            msa_decide_core::engine::report::to_canonical_json(&self),
        )
    }
}

/// Startup failures of [`crate::serve`].
#[derive(Debug, thiserror::Error)]
pub enum ServeError {
    #[error("invalid --allow-origin value `{0}`")]
    BadOrigin(String),
    #[error("cannot bind {addr}: {source}")]
    Bind {
        addr: String,
        source: std::io::Error,
    },
    #[error("server error: {0}")]
    Io(#[from] std::io::Error),
}
