use thiserror::Error;

use crate::piece::Color;

/// The resource an exchange was short of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shortage {
    Color(Color),
    Jokers { needed: u32, available: u32 },
    Dominoes { needed: u32, available: u32 },
}

impl std::fmt::Display for Shortage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Shortage::Color(c) => write!(f, "no {c} chip available"),
            Shortage::Jokers { needed, available } => {
                write!(f, "requires {needed} jokers, {available} available")
            }
            Shortage::Dominoes { needed, available } => {
                write!(f, "requires {needed} dominoes, {available} available")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("illegal exchange: {0}")]
    IllegalExchange(Shortage),
    #[error("step budget of {max_steps} exhausted before the game halted")]
    StepBudgetExceeded { max_steps: u32 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("initial distribution cannot reach three dominoes")]
    NotSolvable,
    #[error("games with {players} players are trivial (need at least 4)")]
    TrivialGame { players: u32 },
    #[error("state space exceeded {limit} nodes")]
    StateSpaceTooLarge { limit: usize },
    #[error("invalid script: {0}")]
    InvalidScript(String),
}

impl GameError {
    /// Stable error code used in machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            GameError::IllegalExchange(_) => "IllegalExchange",
            GameError::StepBudgetExceeded { .. } => "StepBudgetExceeded",
            GameError::Domain(_) => "DomainError",
            GameError::NotSolvable => "NotSolvable",
            GameError::TrivialGame { .. } => "TrivialGame",
            GameError::StateSpaceTooLarge { .. } => "StateSpaceTooLarge",
            GameError::InvalidScript(_) => "InvalidScript",
        }
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> GameError {
    GameError::Domain(msg.into())
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
