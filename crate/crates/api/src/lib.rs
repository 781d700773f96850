//! JSON-over-HTTP service over one immutable decision model.
//!
//! Endpoints, all under `/api/v1`: `GET health`, `GET model`, `GET matrix`,
//! `POST recommend` (a requirements document) and `POST whatif`
//! (`{"base": ..., "variant": ...}`). Bodies are the engine's canonical
//! JSON; failures are a single [`ApiError`].

mod error;
mod routes;

use std::future::Future;
use std::net::SocketAddr;
use std::time::Instant;

use axum::extract::Request;
use axum::http::{header, HeaderValue, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use msa_decide_core::DecisionModel;
use tokio::net::TcpListener;
use tower_http::catch_panic::CatchPanicLayer;
use tower_http::cors::{AllowOrigin, CorsLayer};

pub use error::{ApiError, ServeError};
pub use routes::AppState;

pub const JSON_CONTENT_TYPE: &str = "application/json; charset=utf-8";

pub(crate) fn json_response(status: StatusCode, body: String) -> Response {
    (
        status,
        [(
            header::CONTENT_TYPE,
            HeaderValue::from_static(JSON_CONTENT_TYPE),
        )],
        body,
    )
        .into_response()
}

async fn log_request(req: Request, next: Next) -> Response {
    let method = req.method().clone();
    let path = req.uri().path().to_string();
    let started = Instant::now();
    let response = next.run(req).await;
    tracing::info!(
        %method,
        %path,
        status = response.status().as_u16(),
        duration_ms = started.elapsed().as_secs_f64() * 1000.0,
        "request"
    );
    response
}

fn panic_response(_: Box<dyn std::any::Any + Send + 'static>) -> Response {
    ApiError::new(
        StatusCode::INTERNAL_SERVER_ERROR,
        "E_INTERNAL",
        "internal error",
    )
    .into_response()
}

/// Routes without CORS.
pub fn router(model: DecisionModel) -> Router {
    let api = Router::new()
        .route("/health", get(routes::health))
        .route("/model", get(routes::model))
        .route("/matrix", get(routes::matrix))
        .route("/recommend", post(routes::recommend_handler))
        .route("/whatif", post(routes::whatif_handler));
    Router::new()
        .nest("/api/v1", api)
        .fallback(routes::not_found)
        .method_not_allowed_fallback(routes::method_not_allowed)
        .with_state(AppState::new(model))
        .layer(CatchPanicLayer::custom(panic_response))
        .layer(middleware::from_fn(log_request))
}

/// Cross-origin access for the listed origins; `*` admits any origin.
pub fn cors(allow_origins: &[String]) -> Result<CorsLayer, ServeError> {
    let allow = if allow_origins.iter().any(|o| o == "*") {
        AllowOrigin::any()
    } else {
        let values = allow_origins
            .iter()
            .map(|o| HeaderValue::from_str(o).map_err(|_| ServeError::BadOrigin(o.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        AllowOrigin::list(values)
    };
    Ok(CorsLayer::new()
        .allow_origin(allow)
        .allow_methods([axum::http::Method::GET, axum::http::Method::POST])
        .allow_headers([header::CONTENT_TYPE]))
}

pub fn app(model: DecisionModel, allow_origins: &[String]) -> Result<Router, ServeError> {
    let router = router(model);
    Ok(if allow_origins.is_empty() {
        router
    } else {
        router.layer(cors(allow_origins)?)
    })
}

/// Serves `app` on an already bound listener until `shutdown` resolves.
pub async fn serve_on(
    listener: TcpListener,
    app: Router,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> Result<(), ServeError> {
    axum::serve(listener, app)
        .with_graceful_shutdown(shutdown)
        .await?;
    Ok(())
}

/// Binds `addr` and serves until ctrl-c.
pub async fn serve(
    model: DecisionModel,
    addr: SocketAddr,
    allow_origins: &[String],
) -> Result<(), ServeError> {
    let app = app(model, allow_origins)?;
    let listener = TcpListener::bind(addr)
        .await
        .map_err(|source| ServeError::Bind {
            addr: addr.to_string(),
            source,
        })?;
    tracing::info!(%addr, "listening");
    serve_on(listener, app, async {
        let _ = tokio::signal::ctrl_c().await;
        tracing::info!("shutting down");
    })
    .await
}
