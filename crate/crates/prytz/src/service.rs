//! Local HTTP service for the browser companion.
//!
//! Every request is independent. Malformed bodies get 400, engine
//! precondition failures 422, numeric failures 500, all with an
//! `{"code", "message"}` body. Engine work runs on the blocking pool.
//! `GET /schema` returns the JSON Schema of all bodies.

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use prytz_core::dynamics::DEFAULT_STEPS_PER_ELL;
use prytz_core::Error;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::cors::{AllowOrigin, CorsLayer};

use crate::config::DEFAULT_SAMPLES;
use crate::json::{point, ErrorJson, PathJson, XY};
use crate::ops;

pub const DEFAULT_BIND: &str = "127.0.0.1:8787";

/// JSON Schema (draft 2020-12) for every request and response body, under `$defs`.
pub const SCHEMA: &str = include_str!("../schemas/service.schema.json");

/// Smallest accepted step, as a fraction of the rod length.
pub const MIN_STEP_RATIO: f64 = 1e-5;
/// Largest accepted state count in a trace response.
pub const MAX_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceRequest {
    pub path: PathJson,
    pub theta0: f64,
    pub ell: f64,
    #[serde(default)]
    pub step: Option<f64>,
    /// Treat the path as a loop based at `base_index`; open paths are rejected.
    #[serde(default, rename = "loop")]
    pub as_loop: bool,
    #[serde(default)]
    pub base_index: usize,
    #[serde(default)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HolonomyRequest {
    pub path: PathJson,
    pub ell: f64,
    #[serde(default)]
    pub base_index: usize,
    #[serde(default)]
    pub ode: bool,
    #[serde(default)]
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParallelogramRequest {
    pub v: XY,
    pub w: XY,
    pub ell: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateRequest {
    pub path: PathJson,
    pub base_index: usize,
    pub theta0: f64,
    pub ell: f64,
    #[serde(default)]
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}

fn error_response(status: StatusCode, code: &str, message: String) -> Response {
    let body = ErrorJson {
        code: code.to_string(),
        message,
    };
    (status, Json(body)).into_response()
}

fn engine_error(e: Error) -> Response {
    match e {
        Error::NumericFailure(_) => error_response(StatusCode::INTERNAL_SERVER_ERROR, "numeric_failure", e.to_string()),
        _ => error_response(StatusCode::UNPROCESSABLE_ENTITY, "precondition_failed", e.to_string()),
    }
}

fn step_for(step: Option<f64>, ell: f64) -> prytz_core::Result<f64> {
    let step = step.unwrap_or(ell / DEFAULT_STEPS_PER_ELL);
    if step.is_finite() && ell.is_finite() && ell > 0.0 && step < ell * MIN_STEP_RATIO {
        return Err(Error::InvalidParameter {
            name: "step",
            reason: "below ell * 1e-5",
        });
    }
    Ok(step)
}

async fn run<Req, Resp, F>(body: Bytes, f: F) -> Response
where
    Req: DeserializeOwned + Send + 'static,
    Resp: Serialize + Send + 'static,
    F: FnOnce(Req) -> prytz_core::Result<Resp> + Send + 'static,
{
    let req: Req = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error_response(StatusCode::BAD_REQUEST, "malformed_json", e.to_string()),
    };
    match tokio::task::spawn_blocking(move || f(req)).await {
        Ok(Ok(v)) => Json(v).into_response(),
        Ok(Err(e)) => engine_error(e),
        Err(e) => error_response(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()),
    }
}

async fn health() -> Json<Health> {
    Json(Health {
        status: "ok".into(),
        version: env!("CARGO_PKG_VERSION").into(),
    })
}

async fn schema() -> Response {
    ([(header::CONTENT_TYPE, "application/schema+json")], SCHEMA).into_response()
}

async fn trace(body: Bytes) -> Response {
    run(body, |r: TraceRequest| {
        let path = r.path.to_path()?;
        if r.as_loop && !path.is_closed() {
            return Err(Error::OpenPath);
        }
        let samples = r.samples.unwrap_or(DEFAULT_SAMPLES).clamp(2, MAX_SAMPLES);
        let step = step_for(r.step, r.ell)?;
        ops::trace(&path, r.theta0, r.ell, step, samples, r.as_loop.then_some(r.base_index))
    })
    .await
}

async fn holonomy(body: Bytes) -> Response {
    run(body, |r: HolonomyRequest| {
        let step = step_for(r.step, r.ell)?;
        ops::holonomy(&r.path.to_path()?, r.base_index, r.ell, step, r.ode)
    })
    .await
}

async fn parallelogram(body: Bytes) -> Response {
    run(body, |r: ParallelogramRequest| ops::parallelogram(point(r.v), point(r.w), r.ell)).await
}

async fn estimate(body: Bytes) -> Response {
    run(body, |r: EstimateRequest| {
        let step = step_for(r.step, r.ell)?;
        ops::estimate(&r.path.to_path()?, r.base_index, r.theta0, r.ell, step)
    })
    .await
}

/// True for `http://localhost`, `http://127.0.0.1` and `http://[::1]` with
/// any port.
pub fn is_local_origin(origin: &HeaderValue) -> bool {
    let Ok(o) = origin.to_str() else { return false };
    ["http://localhost", "http://127.0.0.1", "http://[::1]"].iter().any(|host| {
        o.strip_prefix(host)
            .is_some_and(|rest| rest.is_empty() || (rest.starts_with(':') && rest[1..].bytes().all(|b| b.is_ascii_digit())))
    })
}

pub fn router() -> Router {
    let cors = CorsLayer::new()
        .allow_origin(AllowOrigin::predicate(|o, _| is_local_origin(o)))
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    Router::new()
        .route("/health", get(health))
        .route("/schema", get(schema))
        .route("/trace", post(trace))
        .route("/holonomy", post(holonomy))
        .route("/menzin/parallelogram", post(parallelogram))
        .route("/estimate", post(estimate))
        .layer(cors)
}

/// Serves until Ctrl-C.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router())
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
