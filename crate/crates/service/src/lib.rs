//! Live-session service for facilitators: create a game, record exchanges
//! as players make them, undo, and ask for the next recommended exchange.

pub mod error;
pub mod http;
pub mod session;
pub mod store;

pub use error::SessionError;
pub use http::{router, serve};
pub use session::{plan_from, HistoryEntry, Session, SessionStatus, Suggestion};
pub use store::{SessionStore, DATA_DIR_ENV};
