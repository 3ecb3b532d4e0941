//! One JSON document per session in a data directory.
//!
//! Every mutation is applied to a copy, written to a temporary file and
//! renamed over the old document; the in-memory copy is replaced only after
//! the rename succeeds. A failed mutation leaves both untouched.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use chips_core::{Exchange, ExchangeScript, GameConfig};
use chrono::{DateTime, Utc};
use parking_lot::Mutex;

use crate::error::SessionError;
use crate::session::{Session, Suggestion};

pub const DATA_DIR_ENV: &str = "CHIPS_DATA_DIR";

pub struct SessionStore {
    dir: PathBuf,
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-')
}

impl SessionStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<SessionStore, SessionError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(SessionStore { dir, sessions: Mutex::new(HashMap::new()) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    fn persist(&self, session: &Session) -> Result<(), SessionError> {
        let bytes = serde_json::to_vec_pretty(session)?;
        let tmp = self.dir.join(format!(".{}.json.tmp", session.id));
        {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(&bytes)?;
            file.sync_all()?;
        }
        fs::rename(&tmp, self.path_for(&session.id))?;
        Ok(())
    }

    fn load(&self, id: &str) -> Result<Session, SessionError> {
        let bytes = match fs::read(self.path_for(id)) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(SessionError::UnknownSession(id.to_string()))
            }
            Err(e) => return Err(e.into()),
        };
        let session: Session = serde_json::from_slice(&bytes)
            .map_err(|e| SessionError::CorruptSession(format!("{id}: {e}")))?;
        session.verify()?;
        Ok(session)
    }

    fn handle(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        if !valid_id(id) {
            return Err(SessionError::UnknownSession(id.to_string()));
        }
        let mut sessions = self.sessions.lock();
        if let Some(h) = sessions.get(id) {
            return Ok(h.clone());
        }
        let handle = Arc::new(Mutex::new(self.load(id)?));
        sessions.insert(id.to_string(), handle.clone());
        Ok(handle)
    }

    pub fn create(&self, config: GameConfig, deadline: Option<DateTime<Utc>>) -> Result<Session, SessionError> {
        let id = uuid::Uuid::new_v4().to_string();
        let session = Session::new(id.clone(), config, deadline, Utc::now())?;
        self.persist(&session)?;
        self.sessions.lock().insert(id, Arc::new(Mutex::new(session.clone())));
        tracing::info!(id = %session.id, players = config.players, "session created");
        Ok(session)
    }

    pub fn get(&self, id: &str) -> Result<Session, SessionError> {
        Ok(self.handle(id)?.lock().clone())
    }

    /// Runs `f` on a copy of the session and commits it only if both `f`
    /// and the write succeed.
    fn mutate<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut Session) -> Result<T, SessionError>,
    ) -> Result<Session, SessionError> {
        let handle = self.handle(id)?;
        let mut guard = handle.lock();
        let mut draft = guard.clone();
        f(&mut draft)?;
        self.persist(&draft)?;
        *guard = draft;
        Ok(guard.clone())
    }

    pub fn record_exchange(&self, id: &str, exchange: Exchange) -> Result<Session, SessionError> {
        self.mutate(id, |s| s.record(exchange, Utc::now()))
    }

    pub fn undo(&self, id: &str) -> Result<Session, SessionError> {
        self.mutate(id, |s| s.undo())
    }

    pub fn suggestion(&self, id: &str) -> Result<Suggestion, SessionError> {
        Ok(self.handle(id)?.lock().suggestion())
    }

    pub fn plan(&self, id: &str) -> Result<ExchangeScript, SessionError> {
        let session = self.get(id)?;
        session.plan()
    }
}
