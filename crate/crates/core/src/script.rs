use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::piece::{Exchange, PieceSet};

/// Annotation describing what part of a plan a step belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Opening,
    Collapse,
    Rule2,
    Mining,
    Final,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Phase::Opening => "opening",
            Phase::Collapse => "collapse",
            Phase::Rule2 => "rule2",
            Phase::Mining => "mining",
            Phase::Final => "final",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub before: PieceSet,
    pub exchange: Exchange,
    pub after: PieceSet,
    pub phase: Phase,
}

/// An ordered, replayable sequence of exchanges. Serializes as a bare array
/// of steps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExchangeScript {
    steps: Vec<Step>,
}

impl ExchangeScript {
    pub fn new() -> ExchangeScript {
        ExchangeScript::default()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn cost(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> Option<PieceSet> {
        self.steps.first().map(|s| s.before)
    }

    pub fn end(&self) -> Option<PieceSet> {
        self.steps.last().map(|s| s.after)
    }

    /// Final state, or `start` when the script is empty.
    pub fn end_or(&self, start: PieceSet) -> PieceSet {
        self.end().unwrap_or(start)
    }

    /// Applies `ex` to the current end state (or `start` for an empty
    /// script) and records the step.
    pub fn push(&mut self, start: PieceSet, ex: Exchange, phase: Phase) -> Result<PieceSet> {
        let before = self.end_or(start);
        let after = before.apply(&ex)?;
        self.steps.push(Step { before, exchange: ex, after, phase });
        Ok(after)
    }

    pub fn extend(&mut self, other: ExchangeScript) -> Result<()> {
        if let (Some(end), Some(start)) = (self.end(), other.start()) {
            if end != start {
                return Err(GameError::InvalidScript(format!(
                    "cannot join script ending at {end} with one starting at {start}"
                )));
            }
        }
        self.steps.extend(other.steps);
        Ok(())
    }

    pub(crate) fn set_phase(&mut self, i: usize, phase: Phase) {
        self.steps[i].phase = phase;
    }

    /// Re-applies every exchange from `start`, checking that recorded states
    /// match and steps chain. Returns the final state.
    pub fn replay(&self, start: PieceSet) -> Result<PieceSet> {
        let mut state = start;
        for (i, step) in self.steps.iter().enumerate() {
            if step.before != state {
                return Err(GameError::InvalidScript(format!(
                    "step {i} starts at {} but the previous state is {state}",
                    step.before
                )));
            }
            state = state.apply(&step.exchange)?;
            if step.after != state {
                return Err(GameError::InvalidScript(format!(
                    "step {i} records {} but applying {} gives {state}",
                    step.after, step.exchange
                )));
            }
        }
        Ok(state)
    }

    /// Replays from the script's own first state.
    pub fn validate(&self) -> Result<()> {
        match self.start() {
            Some(start) => self.replay(start).map(|_| ()),
            None => Ok(()),
        }
    }

    pub fn exchanges(&self) -> impl Iterator<Item = Exchange> + '_ {
        self.steps.iter().map(|s| s.exchange)
    }
}

impl FromIterator<Step> for ExchangeScript {
    fn from_iter<I: IntoIterator<Item = Step>>(iter: I) -> Self {
        ExchangeScript { steps: iter.into_iter().collect() }
    }
}
