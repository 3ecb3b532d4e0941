use chips_core::{GameError, Shortage};
use thiserror::Error;

use crate::session::SessionStatus;

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("illegal exchange: {0}")]
    IllegalExchange(Shortage),
    #[error("session is {0:?}, not running")]
    SessionNotRunning(SessionStatus),
    #[error("unknown session {0}")]
    UnknownSession(String),
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("no survival plan from the current state")]
    NotSolvable,
    #[error("corrupt session: {0}")]
    CorruptSession(String),
    #[error("storage: {0}")]
    Io(#[from] std::io::Error),
    #[error("encoding: {0}")]
    Json(#[from] serde_json::Error),
}

impl SessionError {
    pub(crate) fn from_game(e: GameError) -> SessionError {
        match e {
            GameError::IllegalExchange(s) => SessionError::IllegalExchange(s),
            GameError::NotSolvable | GameError::TrivialGame { .. } => SessionError::NotSolvable,
            other => SessionError::InvalidRequest(other.to_string()),
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            SessionError::IllegalExchange(_) => "IllegalExchange",
            SessionError::SessionNotRunning(_) => "SessionNotRunning",
            SessionError::UnknownSession(_) => "UnknownSession",
            SessionError::NothingToUndo => "NothingToUndo",
            SessionError::InvalidConfig(_) => "InvalidConfig",
            SessionError::InvalidRequest(_) => "InvalidRequest",
            SessionError::NotSolvable => "NotSolvable",
            SessionError::CorruptSession(_) => "CorruptSession",
            SessionError::Io(_) | SessionError::Json(_) => "StorageError",
        }
    }
}
