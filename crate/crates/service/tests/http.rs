//! Endpoint-level tests driving the router in-process.

use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use chips_service::{router, SessionStore};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

struct Api {
    app: Router,
    _dir: tempfile::TempDir,
    data: std::path::PathBuf,
}

impl Api {
    fn new() -> Api {
        let dir = tempfile::tempdir().unwrap();
        let data = dir.path().join("sessions");
        let app = router(Arc::new(SessionStore::open(&data).unwrap()));
        Api { app, _dir: dir, data }
    }

    fn reopen(&mut self) {
        self.app = router(Arc::new(SessionStore::open(&self.data).unwrap()));
    }

    async fn call(&self, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
        let builder = Request::builder().method(method).uri(uri);
        let req = match body {
            Some(b) => builder.header("content-type", "application/json").body(Body::from(b.to_string())),
            None => builder.body(Body::empty()),
        }
        .unwrap();
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
        (status, value)
    }

    async fn create(&self, players: u32, chips: [u32; 3]) -> Value {
        let body = json!({"players": players, "initial": {"chips": chips, "jokers": 0, "dominoes": 0}});
        let (status, session) = self.call(Method::POST, "/sessions", Some(body)).await;
        assert_eq!(status, StatusCode::CREATED, "{session}");
        session
    }
}

fn id(session: &Value) -> String {
    session["id"].as_str().unwrap().to_string()
}

#[tokio::test]
async fn health() {
    let api = Api::new();
    assert_eq!(api.call(Method::GET, "/healthz", None).await.0, StatusCode::OK);
}

#[tokio::test]
async fn create_and_fetch() {
    let api = Api::new();
    let s = api.create(4, [4, 3, 1]).await;
    assert_eq!(s["status"], "running");
    assert_eq!(s["verdict"]["solvable"], true);
    assert_eq!(s["current"], json!({"chips": [4, 3, 1], "jokers": 0, "dominoes": 0}));
    let (status, fetched) = api.call(Method::GET, &format!("/sessions/{}", id(&s)), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(fetched, s);
}

#[tokio::test]
async fn worst_case_session_survives_by_suggestions() {
    let mut api = Api::new();
    let s = api.create(4, [4, 3, 1]).await;
    let sid = id(&s);

    let (status, plan) = api.call(Method::GET, &format!("/sessions/{sid}/plan"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(plan.as_array().unwrap().len(), 8);

    let mut applied = 0;
    loop {
        let (status, sug) = api.call(Method::GET, &format!("/sessions/{sid}/suggestion"), None).await;
        assert_eq!(status, StatusCode::OK);
        if sug["exchange"].is_null() {
            break;
        }
        assert_eq!(sug["remainingPlanCost"], 8 - applied);
        let body = json!({"exchange": sug["exchange"]});
        let (status, session) = api.call(Method::POST, &format!("/sessions/{sid}/exchanges"), Some(body)).await;
        assert_eq!(status, StatusCode::OK, "{session}");
        applied += 1;
    }
    assert_eq!(applied, 8);

    api.reopen();
    let (status, s) = api.call(Method::GET, &format!("/sessions/{sid}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(s["status"], "survived");
    assert_eq!(s["history"].as_array().unwrap().len(), 8);
    assert_eq!(s["current"]["dominoes"], 4);
}

#[tokio::test]
async fn illegal_exchange_is_a_conflict() {
    let api = Api::new();
    let sid = id(&api.create(4, [4, 3, 1]).await);
    let (status, err) = api
        .call(Method::POST, &format!("/sessions/{sid}/exchanges"), Some(json!({"exchange": {"rule": 2}})))
        .await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["code"], "IllegalExchange");
    assert!(err["message"].as_str().unwrap().contains("dominoes"));

    let (_, s) = api.call(Method::GET, &format!("/sessions/{sid}"), None).await;
    assert!(s["history"].as_array().unwrap().is_empty());
}

#[tokio::test]
async fn undo_round_trip() {
    let api = Api::new();
    let s = api.create(4, [4, 3, 1]).await;
    let sid = id(&s);
    let undo = format!("/sessions/{sid}/undo");

    let (status, err) = api.call(Method::POST, &undo, None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["code"], "NothingToUndo");

    let body = json!({"exchange": {"rule": 1, "colors": ["C1", "C2", "C3"], "jokers": 0}});
    let (status, after) = api.call(Method::POST, &format!("/sessions/{sid}/exchanges"), Some(body)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(after["current"], json!({"chips": [3, 2, 0], "jokers": 1, "dominoes": 1}));

    let (status, back) = api.call(Method::POST, &undo, None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(back["current"], s["current"]);
    assert_eq!(api.call(Method::POST, &undo, None).await.1["code"], "NothingToUndo");
}

#[tokio::test]
async fn stuck_session_rejects_exchanges() {
    let api = Api::new();
    let s = api.create(4, [8, 0, 0]).await;
    assert_eq!(s["status"], "stuck");
    assert_eq!(s["verdict"]["solvable"], false);
    let sid = id(&s);
    let body = json!({"exchange": {"rule": 1, "colors": ["C1"], "jokers": 2}});
    let (status, err) = api.call(Method::POST, &format!("/sessions/{sid}/exchanges"), Some(body)).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["code"], "SessionNotRunning");
    let (status, err) = api.call(Method::GET, &format!("/sessions/{sid}/plan"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["code"], "NotSolvable");
}

#[tokio::test]
async fn unknown_sessions_are_not_found() {
    let api = Api::new();
    for uri in ["/sessions/missing", "/sessions/missing/suggestion", "/sessions/missing/plan"] {
        let (status, err) = api.call(Method::GET, uri, None).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{uri}");
        assert_eq!(err["code"], "UnknownSession");
    }
    let (status, err) = api.call(Method::POST, "/sessions/missing/undo", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(err["code"], "UnknownSession");
}

#[tokio::test]
async fn malformed_requests_are_bad_requests() {
    let api = Api::new();
    let (status, err) = api.call(Method::POST, "/sessions", Some(json!({"players": 4}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(err["code"], "InvalidConfig");

    let body = json!({"players": 0, "initial": {"chips": [1, 1, 1], "jokers": 0, "dominoes": 0}});
    let (status, err) = api.call(Method::POST, "/sessions", Some(body)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(err["code"], "InvalidConfig");

    let sid = id(&api.create(4, [4, 3, 1]).await);
    let bad = json!({"exchange": {"rule": 1, "colors": ["C1"], "jokers": 0}});
    let (status, err) = api.call(Method::POST, &format!("/sessions/{sid}/exchanges"), Some(bad)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(err["code"], "InvalidRequest");
}

#[tokio::test]
async fn deadline_round_trips() {
    let api = Api::new();
    let body = json!({
        "players": 4,
        "initial": {"chips": [4, 3, 1], "jokers": 0, "dominoes": 0},
        "deadline": "2030-01-01T00:00:00Z"
    });
    let (status, s) = api.call(Method::POST, "/sessions", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(s["deadline"], "2030-01-01T00:00:00Z");
}
