//! Exact search checked against an independent breadth-first oracle, the
//! closed-form costs, and frozen minima.

use std::collections::{HashSet, VecDeque};

use chips_core::theory::{best_case_distribution, full_sets_distribution, worst_case_distribution};
use chips_core::{
    min_exchanges, min_exchanges_with, rule1_only_enumerate, theory, worst_case_cost, GameConfig, PieceSet,
    SearchBudget, SearchGoal, SearchOptions, SearchStatus,
};

/// Plain BFS over raw (uncanonicalized) states, cut at `max_cost` steps and
/// `joker_cap` jokers. Shares nothing with the search beyond `apply`.
fn bfs_min(initial: PieceSet, target: u32, max_cost: u32, joker_cap: u32) -> Option<u32> {
    let mut seen = HashSet::from([initial]);
    let mut queue = VecDeque::from([(initial, 0u32)]);
    while let Some((s, g)) = queue.pop_front() {
        if s.dominoes >= target {
            return Some(g);
        }
        if g == max_cost {
            continue;
        }
        for ex in s.legal_exchanges() {
            let t = s.apply(&ex).unwrap();
            if t.jokers <= joker_cap && seen.insert(t) {
                queue.push_back((t, g + 1));
            }
        }
    }
    None
}

fn states_up_to(max: u32) -> Vec<PieceSet> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max - a {
            for c in 0..=max - a - b {
                for x in 0..=max - a - b - c {
                    for d in 0..=max - a - b - c - x {
                        out.push(PieceSet::new([a, b, c], x, d));
                    }
                }
            }
        }
    }
    out
}

const SMALL_GOAL: u32 = 4;
const SMALL_MAX_COST: u32 = 10;

fn small_budget(s: &PieceSet) -> SearchBudget {
    SearchBudget::new(SMALL_MAX_COST, 1_000_000, SearchBudget::default_joker_cap(s)).unwrap()
}

#[test]
fn matches_bfs_on_all_small_states() {
    for s in states_up_to(8) {
        let budget = small_budget(&s);
        let r = min_exchanges(&s, &SearchGoal::ReachDominoes(SMALL_GOAL), &budget);
        let oracle = bfs_min(s, SMALL_GOAL, budget.max_cost, budget.joker_cap);
        assert_eq!(r.cost, oracle, "{s}");
        if let Some(w) = r.witness {
            assert!(w.replay(s).unwrap().dominoes >= SMALL_GOAL);
        }
    }
}

#[test]
fn canonicalization_and_dominance_preserve_costs() {
    let goal = SearchGoal::ReachDominoes(SMALL_GOAL);
    for s in states_up_to(8) {
        let budget = small_budget(&s);
        let canonical = min_exchanges(&s, &goal, &budget).cost;
        let raw = SearchOptions { canonicalize: false, dominance: false };
        assert_eq!(min_exchanges_with(&s, &goal, &budget, raw).cost, canonical, "{s}");
        let pruned = SearchOptions { canonicalize: true, dominance: true };
        assert_eq!(min_exchanges_with(&s, &goal, &budget, pruned).cost, canonical, "{s}");
    }
}

#[test]
fn witnesses_meet_goal_only_at_the_end() {
    for s in states_up_to(8) {
        let r = min_exchanges(&s, &SearchGoal::ReachDominoes(SMALL_GOAL), &small_budget(&s));
        let Some(w) = r.witness else { continue };
        assert_eq!(r.status, SearchStatus::Optimal);
        assert_eq!(w.cost() as u32, r.cost.unwrap());
        let end = w.replay(s).unwrap();
        assert!(end.dominoes >= SMALL_GOAL);
        for step in w.steps() {
            assert!(step.before.dominoes < SMALL_GOAL);
        }
        // Heuristic floor: at least one exchange per missing domino.
        assert!(r.cost.unwrap() >= SMALL_GOAL.saturating_sub(s.dominoes));
    }
}

fn survival_min(initial: PieceSet, p: u32) -> (SearchBudget, chips_core::SearchResult) {
    let goal = SearchGoal::ReachDominoes(p);
    let budget = SearchBudget::for_goal(&initial, &goal);
    (budget, min_exchanges(&initial, &goal, &budget))
}

/// Exact minima derived by the search and cross-checked by BFS, frozen.
const WORST_CASE_MINIMA: [(u32, u32); 4] = [(4, 8), (5, 9), (6, 10), (7, 11)];

#[test]
fn worst_case_minima_are_frozen() {
    for (p, expected) in WORST_CASE_MINIMA {
        let initial = worst_case_distribution(p).unwrap();
        let (budget, r) = survival_min(initial, p);
        assert_eq!(budget.max_cost, 5 * p - 12);
        assert_eq!(r.status, SearchStatus::Optimal);
        assert_eq!(r.cost, Some(expected), "p={p}");
        assert_eq!(bfs_min(initial, p, budget.max_cost, budget.joker_cap), Some(expected));
        assert!(expected <= worst_case_cost(p).unwrap().formula_cost);
        r.witness.unwrap().replay(initial).unwrap();
    }
}

#[test]
fn best_case_minimum_matches_formula() {
    let initial = best_case_distribution(6).unwrap();
    let (budget, r) = survival_min(initial, 6);
    assert_eq!(budget.max_cost, 10);
    assert_eq!(r.cost, Some(10));
    assert_eq!(bfs_min(initial, 6, 10, budget.joker_cap), Some(10));
}

/// A standard game needs at least one Rule 2, and every Rule 2 destroys
/// three dominoes that Rule 1 must rebuild, so no plan beats `p + 4`.
#[test]
fn standard_games_cannot_beat_p_plus_four() {
    for p in 4..=7u32 {
        for initial in [worst_case_distribution(p).unwrap(), full_sets_distribution(p)] {
            let (_, r) = survival_min(initial, p);
            assert!(r.cost.unwrap() >= p + 4, "{initial}");
        }
    }
}

#[test]
fn rule1_only_search_matches_joker_collapse() {
    for x in 1..=20 {
        let report = rule1_only_enumerate(&PieceSet::jokers_only(x), 100_000).unwrap();
        assert_eq!(report.max_dominoes, theory::collapse_dominoes(x).unwrap());
        assert_eq!(report.terminals.len(), 1);
        assert_eq!(report.terminals[0].jokers, theory::phi(x).unwrap());
    }
}

#[test]
fn default_budget_uses_theory_bound_when_available() {
    let config = GameConfig::new(5, full_sets_distribution(5)).unwrap();
    let bound = theory::theory_bound(&config).unwrap();
    let budget = SearchBudget::for_goal(&config.initial, &SearchGoal::ReachDominoes(5));
    assert_eq!(budget.max_cost, bound.formula_cost);
    assert_eq!(budget.joker_cap, 10 + 8);
}
