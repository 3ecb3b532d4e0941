//! Engine, planner and exact search for the poker chips, dominoes and
//! survival game.
//!
//! The group's pieces are pooled into a [`PieceSet`]. [`policy`] plays the
//! deterministic cooperative strategy, [`theory`] builds the constructive
//! plans and closed-form costs, and [`search`] computes exact minimum
//! exchange counts to check them.

pub mod error;
pub mod piece;
pub mod policy;
pub mod script;
pub mod search;
pub mod theory;
pub mod verify;

pub use error::{GameError, Result, Shortage};
pub use piece::{Color, ColorSet, Exchange, PieceSet, PERMUTATIONS};
pub use policy::{
    cooperative_step, max_principle_exchange, run_cooperative, run_cooperative_from, CooperativeRun,
    GameConfig, Terminal,
};
pub use script::{ExchangeScript, Phase, Step};
pub use search::{
    achieves_d3, min_exchanges, min_exchanges_with, SearchBudget, SearchGoal, SearchOptions, SearchResult,
    SearchStatus,
};
pub use theory::{
    best_case_cost, collapse_dominoes, general_upper_bound, joker_collapse_plan, joker_mining_plan, phi,
    solvable, survival_plan, worst_case_cost, CostReport, Scenario, SolvabilityVerdict, SufficientSet,
    VerdictMethod,
};
pub use verify::{rule1_only_enumerate, verify_minimal_sufficient, MinimalSufficientReport, Rule1Report};
