//! Fixed workloads shared by the benchmarks.

use chips_core::{theory, GameConfig, PieceSet, SearchBudget, SearchGoal};

/// Worst-case configuration for `p` players.
pub fn worst_case(p: u32) -> GameConfig {
    GameConfig::new(p, theory::worst_case_distribution(p).expect("p >= 4")).expect("valid config")
}

/// Best-case configuration for `p` players (`2p` divisible by 3).
pub fn best_case(p: u32) -> GameConfig {
    GameConfig::new(p, theory::best_case_distribution(p).expect("p >= 6, 3 | 2p")).expect("valid config")
}

/// Survival goal and its theory-seeded budget.
pub fn survival_search(config: &GameConfig) -> (PieceSet, SearchGoal, SearchBudget) {
    let goal = SearchGoal::ReachDominoes(config.players);
    let budget = SearchBudget::for_goal(&config.initial, &goal);
    (config.initial, goal, budget)
}
