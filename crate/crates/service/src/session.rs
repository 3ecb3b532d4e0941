//! Live session state: the configuration, the exchanges recorded so far and
//! everything derived from them.

use chips_core::{
    cooperative_step, run_cooperative_from, solvable, theory, Exchange, ExchangeScript, GameConfig, GameError,
    PieceSet, Phase, SolvabilityVerdict,
};
use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::SessionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SessionStatus {
    Setup,
    Running,
    Survived,
    Stuck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub exchange: Exchange,
    pub timestamp: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Session {
    pub id: String,
    pub config: GameConfig,
    pub current: PieceSet,
    pub history: Vec<HistoryEntry>,
    pub status: SessionStatus,
    pub deadline: Option<DateTime<Utc>>,
    pub created_at: DateTime<Utc>,
    pub verdict: SolvabilityVerdict,
    /// Fewer than four players: survival is impossible for a standard game.
    pub trivial: bool,
    pub standard: bool,
    /// Plan from `current` to survival, refreshed on every change.
    pub plan_cache: Option<ExchangeScript>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Suggestion {
    pub exchange: Option<Exchange>,
    pub rationale: Option<Phase>,
    pub remaining_plan_cost: Option<u32>,
}

/// A plan from `state` to `players` dominoes: the cooperative policy, or the
/// explicit construction when the policy stalls on a colored-only state.
pub fn plan_from(state: PieceSet, players: u32) -> Result<ExchangeScript, GameError> {
    let run = run_cooperative_from(state, players, chips_core::policy::default_max_steps(players))?;
    if run.survived() {
        return Ok(run.script);
    }
    if players >= 4 && state.is_colored_only() {
        return theory::d3_composition_plan(&GameConfig { players, initial: state });
    }
    Err(GameError::NotSolvable)
}

impl Session {
    pub fn new(
        id: String,
        config: GameConfig,
        deadline: Option<DateTime<Utc>>,
        now: DateTime<Utc>,
    ) -> Result<Session, SessionError> {
        config.validate().map_err(|e| SessionError::InvalidConfig(e.to_string()))?;
        let mut session = Session {
            id,
            config,
            current: config.initial,
            history: Vec::new(),
            status: SessionStatus::Setup,
            deadline,
            created_at: now,
            verdict: solvable(&config.initial),
            trivial: config.players <= 3,
            standard: config.is_standard(),
            plan_cache: None,
        };
        session.refresh();
        Ok(session)
    }

    fn compute_status(&self) -> SessionStatus {
        if self.current.dominoes >= self.config.players {
            SessionStatus::Survived
        } else if self.current.legal_exchanges().is_empty() {
            SessionStatus::Stuck
        } else {
            SessionStatus::Running
        }
    }

    fn refresh(&mut self) {
        self.status = self.compute_status();
        self.plan_cache = match self.status {
            SessionStatus::Running => plan_from(self.current, self.config.players).ok(),
            _ => None,
        };
    }

    pub fn record(&mut self, exchange: Exchange, now: DateTime<Utc>) -> Result<(), SessionError> {
        if self.status != SessionStatus::Running {
            return Err(SessionError::SessionNotRunning(self.status));
        }
        self.current = self.current.apply(&exchange).map_err(SessionError::from_game)?;
        self.history.push(HistoryEntry { exchange, timestamp: now });
        self.refresh();
        Ok(())
    }

    pub fn undo(&mut self) -> Result<Exchange, SessionError> {
        let last = self.history.pop().ok_or(SessionError::NothingToUndo)?;
        self.current = self.replay()?;
        self.refresh();
        Ok(last.exchange)
    }

    /// Folds the history over the rules from the initial pieces.
    pub fn replay(&self) -> Result<PieceSet, SessionError> {
        self.history.iter().try_fold(self.config.initial, |state, entry| {
            state
                .apply(&entry.exchange)
                .map_err(|e| SessionError::CorruptSession(format!("{}: {e}", self.id)))
        })
    }

    /// Replay integrity plus the derived-status invariants.
    pub fn verify(&self) -> Result<(), SessionError> {
        let replayed = self.replay()?;
        if replayed != self.current {
            return Err(SessionError::CorruptSession(format!(
                "{}: history replays to {replayed} but current is {}",
                self.id, self.current
            )));
        }
        if self.status != SessionStatus::Setup && self.status != self.compute_status() {
            return Err(SessionError::CorruptSession(format!("{}: stale status {:?}", self.id, self.status)));
        }
        Ok(())
    }

    pub fn suggestion(&self) -> Suggestion {
        if self.status != SessionStatus::Running {
            return Suggestion { exchange: None, rationale: None, remaining_plan_cost: None };
        }
        let Some((_, exchange)) = cooperative_step(&self.current) else {
            return Suggestion { exchange: None, rationale: None, remaining_plan_cost: None };
        };
        let max_steps = chips_core::policy::default_max_steps(self.config.players);
        let run = run_cooperative_from(self.current, self.config.players, max_steps).ok();
        let rationale = run.as_ref().and_then(|r| r.script.steps().first()).map(|s| s.phase);
        let remaining_plan_cost = run.filter(|r| r.survived()).map(|r| r.script.cost() as u32);
        Suggestion { exchange: Some(exchange), rationale, remaining_plan_cost }
    }

    pub fn plan(&self) -> Result<ExchangeScript, SessionError> {
        if self.status == SessionStatus::Survived {
            return Ok(ExchangeScript::new());
        }
        plan_from(self.current, self.config.players).map_err(SessionError::from_game)
    }
}
