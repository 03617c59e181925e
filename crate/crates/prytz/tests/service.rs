//! Router tests without a socket. Every response body is checked against the
//! published schema.

use axum::body::{to_bytes, Body};
use axum::http::{header, Method, Request, StatusCode};
use prytz::service::{router, SCHEMA};
use serde_json::{json, Value};
use tower::ServiceExt;

fn validator(def: &str) -> jsonschema::Validator {
    let doc: Value = serde_json::from_str(SCHEMA).unwrap();
    let schema = json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$defs": doc["$defs"],
        "$ref": format!("#/$defs/{def}"),
    });
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_schema(def: &str, body: &Value) {
    let v = validator(def);
    let errors: Vec<String> = v.iter_errors(body).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{def}: {errors:?}\n{body}");
}

async fn call(method: Method, uri: &str, body: Option<String>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    if body.is_some() {
        req = req.header(header::CONTENT_TYPE, "application/json");
    }
    let req = req.body(body.map(Body::from).unwrap_or_else(Body::empty)).unwrap();
    let resp = router().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    (status, serde_json::from_slice(&bytes).unwrap())
}

async fn post(uri: &str, body: Value) -> (StatusCode, Value) {
    call(Method::POST, uri, Some(body.to_string())).await
}

fn square(side: f64) -> Value {
    json!({"closed": true, "vertices": [[0, 0], [side, 0], [side, side], [0, side]]})
}

#[tokio::test]
async fn health_reports_ok_and_version() {
    let (status, body) = call(Method::GET, "/health", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["status"], "ok");
    assert_eq!(body["version"], env!("CARGO_PKG_VERSION"));
    assert_schema("health", &body);
}

#[tokio::test]
async fn schema_is_served() {
    let (status, body) = call(Method::GET, "/schema", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(body["$defs"]["trace_result"].is_object());
}

#[tokio::test]
async fn holonomy_of_side_two_square() {
    let (status, body) = post("/holonomy", json!({"path": square(2.0), "ell": 1.0})).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("loop_holonomy", &body);
    let trace = body["classification"]["trace"].as_f64().unwrap();
    assert!((trace + 5.63).abs() < 5e-3, "{trace}");
    assert_eq!(body["classification"]["kind"], "hyperbolic");
    assert_eq!(body["winding_prediction"], 1);
}

#[tokio::test]
async fn ode_holonomy_agrees_with_polygon() {
    let (_, poly) = post("/holonomy", json!({"path": square(2.0), "ell": 1.0})).await;
    let (status, ode) = post("/holonomy", json!({"path": square(2.0), "ell": 1.0, "ode": true})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ode["method"], "ode");
    let t = |v: &Value| v["classification"]["trace"].as_f64().unwrap();
    assert!((t(&poly) - t(&ode)).abs() < 1e-8);
}

#[tokio::test]
async fn small_square_is_elliptic() {
    let (status, body) = post("/holonomy", json!({"path": square(0.1), "ell": 1.0})).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("loop_holonomy", &body);
    assert_eq!(body["classification"]["kind"], "elliptic");
    assert!(body["classification"]["center"].is_array());
    assert!(body["winding_prediction"].is_null());
}

#[tokio::test]
async fn trace_open_path() {
    let path = json!({"closed": false, "vertices": [[0, 0], [3, 0]]});
    let (status, body) = post(
        "/trace",
        json!({"path": path, "theta0": std::f64::consts::FRAC_PI_2, "ell": 1.0, "samples": 11}),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("trace_result", &body);
    let states = body["states"].as_array().unwrap();
    assert_eq!(states.len(), 11);
    // tan(θ/2) = e^{x/ℓ} along the line.
    for s in states {
        let (x, th) = (s["x"].as_f64().unwrap(), s["theta"].as_f64().unwrap());
        assert!(((th / 2.0).tan().ln() - x).abs() < 1e-8);
    }
    assert!(body.get("area_identity").is_none());
}

#[tokio::test]
async fn trace_loop_reports_identity() {
    let (status, body) = post(
        "/trace",
        json!({"path": square(1.5), "theta0": 0.4, "ell": 1.0, "loop": true, "base_index": 2}),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("trace_result", &body);
    let id = &body["area_identity"];
    assert_eq!(id["a_region"].as_f64().unwrap(), 2.25);
    assert!(id["residual"].as_f64().unwrap().abs() < 1e-6 * 2.25);
    let s = &body["states"][0];
    assert_eq!((s["x"].as_f64(), s["y"].as_f64()), (Some(1.5), Some(1.5)));
}

#[tokio::test]
async fn loop_trace_of_open_path_is_422() {
    let path = json!({"closed": false, "vertices": [[0, 0], [1, 0]]});
    let (status, body) = post("/trace", json!({"path": path, "theta0": 0.0, "ell": 1.0, "loop": true})).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_schema("error", &body);
    assert_eq!(body["code"], "precondition_failed");
}

#[tokio::test]
async fn holonomy_of_open_path_is_422() {
    let path = json!({"closed": false, "vertices": [[0, 0], [1, 0], [1, 1]]});
    let (status, _) = post("/holonomy", json!({"path": path, "ell": 1.0})).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn malformed_json_is_400() {
    for body in ["{", "[]", r#"{"path": 3, "ell": 1}"#, r#"{"ell": 1}"#] {
        let (status, resp) = call(Method::POST, "/holonomy", Some(body.to_string())).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");
        assert_schema("error", &resp);
        assert_eq!(resp["code"], "malformed_json");
    }
    let (status, _) = post("/holonomy", json!({"path": square(1.0), "ell": 1.0, "typo": 1})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn bad_parameters_are_422() {
    let cases = [
        ("/holonomy", json!({"path": square(1.0), "ell": -1.0})),
        ("/menzin/parallelogram", json!({"v": [1, 0], "w": [2, 0], "ell": 1.0})),
        ("/estimate", json!({"path": square(1.0), "base_index": 9, "theta0": 0, "ell": 1.0})),
        ("/trace", json!({"path": square(1.0), "theta0": 0, "ell": 1.0, "step": 1e-9})),
        ("/trace", json!({"path": {"closed": false, "vertices": [[0, 0]]}, "theta0": 0, "ell": 1.0})),
    ];
    for (uri, body) in cases {
        let (status, resp) = post(uri, body.clone()).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{uri} {body}");
        assert_schema("error", &resp);
    }
}

#[tokio::test]
async fn parallelogram_report() {
    let (status, body) = post("/menzin/parallelogram", json!({"v": [2, 0], "w": [0, 2], "ell": 1.0})).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("menzin_report", &body);
    assert!(body["attracting"].as_bool().unwrap());
    let (t, tf) = (body["trace"].as_f64().unwrap(), body["trace_formula"].as_f64().unwrap());
    assert!((t - tf).abs() < 1e-12 * t.abs());
    assert!(body["multiplier_plus"].as_f64().unwrap() < 1.0);

    let (_, small) = post("/menzin/parallelogram", json!({"v": [0.5, 0], "w": [0, 0.5], "ell": 1.0})).await;
    assert_schema("menzin_report", &small);
    assert!(small["z_plus"].is_null());
}

#[tokio::test]
async fn estimate_readings_and_prediction() {
    let tri = json!({"closed": true, "vertices": [[0, 0], [0.05, 0.01], [0.02, 0.04]]});
    let (status, body) = post("/estimate", json!({"path": tri, "base_index": 0, "theta0": 0.7, "ell": 1.0})).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("estimate", &body);
    let f = |k: &str| body[k].as_f64().unwrap();
    assert!((f("averaged_reading") - 0.5 * (f("reading") + f("reading_opposite"))).abs() < 1e-15);
    let pred = body["prediction"]["ell_sigma_predicted"].as_f64().unwrap();
    let area = f("area");
    assert!((f("reading") - pred).abs() < (f("reading") - area).abs());
}

#[tokio::test]
async fn responses_are_deterministic() {
    let req = json!({"path": square(1.2), "theta0": 0.3, "ell": 0.9, "loop": true});
    let (_, a) = post("/trace", req.clone()).await;
    let (_, b) = post("/trace", req).await;
    assert_eq!(a.to_string(), b.to_string());
}

#[tokio::test]
async fn concurrent_requests_are_independent() {
    let reqs: Vec<_> = (1..=8).map(|k| json!({"path": square(0.4 * k as f64), "ell": 1.0})).collect();
    let sequential: Vec<Value> = {
        let mut out = Vec::new();
        for r in &reqs {
            out.push(post("/holonomy", r.clone()).await.1);
        }
        out
    };
    let handles: Vec<_> = reqs
        .iter()
        .rev()
        .map(|r| tokio::spawn(post("/holonomy", r.clone())))
        .collect();
    let mut parallel = Vec::new();
    for h in handles {
        parallel.push(h.await.unwrap().1);
    }
    parallel.reverse();
    assert_eq!(sequential, parallel);
}

#[tokio::test]
async fn cors_allows_local_origin_only() {
    let preflight = |origin: &'static str| {
        Request::builder()
            .method(Method::OPTIONS)
            .uri("/trace")
            .header(header::ORIGIN, origin)
            .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
            .body(Body::empty())
            .unwrap()
    };
    let ok = router().oneshot(preflight("http://localhost:5173")).await.unwrap();
    assert_eq!(
        ok.headers().get(header::ACCESS_CONTROL_ALLOW_ORIGIN).unwrap(),
        "http://localhost:5173"
    );
    let other = router().oneshot(preflight("https://example.com")).await.unwrap();
    assert!(other.headers().get(header::ACCESS_CONTROL_ALLOW_ORIGIN).is_none());
}
