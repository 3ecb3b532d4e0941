//! HTTP API over a [`SessionStore`].

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use chips_core::{Exchange, GameConfig, PieceSet};
use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::SessionError;
use crate::store::SessionStore;

#[derive(Debug, Serialize, Deserialize)]
pub struct CreateSession {
    pub players: u32,
    pub initial: PieceSet,
    #[serde(default)]
    pub deadline: Option<DateTime<Utc>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RecordExchange {
    pub exchange: Exchange,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

impl IntoResponse for SessionError {
    fn into_response(self) -> Response {
        let status = match &self {
            SessionError::IllegalExchange(_)
            | SessionError::NothingToUndo
            | SessionError::SessionNotRunning(_)
            | SessionError::NotSolvable => StatusCode::CONFLICT,
            SessionError::UnknownSession(_) => StatusCode::NOT_FOUND,
            SessionError::InvalidConfig(_) | SessionError::InvalidRequest(_) => StatusCode::BAD_REQUEST,
            SessionError::CorruptSession(_) | SessionError::Io(_) | SessionError::Json(_) => {
                StatusCode::INTERNAL_SERVER_ERROR
            }
        };
        let body = ErrorBody { code: self.code().to_string(), message: self.to_string() };
        (status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, SessionError>;

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/healthz", get(|| async { StatusCode::OK }))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/exchanges", post(record_exchange))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/suggestion", get(suggestion))
        .route("/sessions/{id}/plan", get(plan))
        .with_state(store)
}

async fn create_session(
    State(store): State<Arc<SessionStore>>,
    body: Result<Json<CreateSession>, JsonRejection>,
) -> ApiResult<impl IntoResponse> {
    let Json(req) = body.map_err(|e| SessionError::InvalidConfig(e.body_text()))?;
    let config = GameConfig { players: req.players, initial: req.initial };
    let session = store.create(config, req.deadline)?;
    Ok((StatusCode::CREATED, Json(session)))
}

async fn get_session(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    Ok(Json(store.get(&id)?))
}

async fn record_exchange(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    body: Result<Json<RecordExchange>, JsonRejection>,
) -> ApiResult<impl IntoResponse> {
    let Json(req) = body.map_err(|e| SessionError::InvalidRequest(e.body_text()))?;
    Ok(Json(store.record_exchange(&id, req.exchange)?))
}

async fn undo(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    Ok(Json(store.undo(&id)?))
}

async fn suggestion(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    Ok(Json(store.suggestion(&id)?))
}

async fn plan(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    Ok(Json(store.plan(&id)?))
}

pub async fn serve(store: Arc<SessionStore>, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(%addr, dir = %store.dir().display(), "serving");
    axum::serve(listener, router(store)).await
}
