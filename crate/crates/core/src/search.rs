//! Exact minimum-exchange search.
//!
//! Best-first search over the implicit state graph with unit step cost and
//! the domino-deficit heuristic. Rule 1 adds exactly one domino and Rule 2
//! removes three, so the deficit never drops by more than one per step: the
//! heuristic is consistent and the first goal popped is optimal. The graph
//! is infinite (mining grows jokers without bound), so the search is bounded
//! by a cost ceiling taken from a known plan.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::piece::PieceSet;
use crate::policy::{annotate_phases, run_cooperative_from, GameConfig};
use crate::script::{ExchangeScript, Phase};
use crate::theory::theory_bound;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind", content = "target")]
pub enum SearchGoal {
    /// At least this many dominoes.
    ReachDominoes(u32),
    /// A superset of the target, up to relabeling colors.
    ReachSubset(PieceSet),
}

impl SearchGoal {
    pub fn dominoes(target: u32) -> Result<SearchGoal> {
        if target == 0 {
            return Err(domain("domino target must be at least 1"));
        }
        Ok(SearchGoal::ReachDominoes(target))
    }

    pub fn subset(target: PieceSet) -> SearchGoal {
        SearchGoal::ReachSubset(target.canonicalize())
    }

    pub fn is_met(&self, state: &PieceSet) -> bool {
        match self {
            SearchGoal::ReachDominoes(d) => state.dominoes >= *d,
            SearchGoal::ReachSubset(t) => state.canonicalize().contains(t),
        }
    }

    /// Lower bound on remaining exchanges: each one adds at most a domino.
    pub fn heuristic(&self, state: &PieceSet) -> u32 {
        let target = match self {
            SearchGoal::ReachDominoes(d) => *d,
            SearchGoal::ReachSubset(t) => t.dominoes,
        };
        target.saturating_sub(state.dominoes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchBudget {
    pub max_cost: u32,
    pub max_nodes: usize,
    pub joker_cap: u32,
}

pub const DEFAULT_MAX_NODES: usize = 2_000_000;

impl SearchBudget {
    pub fn new(max_cost: u32, max_nodes: usize, joker_cap: u32) -> Result<SearchBudget> {
        let budget = SearchBudget { max_cost, max_nodes, joker_cap };
        budget.validate()?;
        Ok(budget)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_cost == 0 || self.max_nodes == 0 || self.joker_cap == 0 {
            return Err(domain("search budget fields must be positive"));
        }
        Ok(())
    }

    pub fn default_joker_cap(initial: &PieceSet) -> u32 {
        initial.total_pieces() + 8
    }

    /// Budget with the ceiling taken from the best known plan: the
    /// closed-form cost when one applies, else the cooperative policy's
    /// run, else a generous fallback.
    pub fn for_goal(initial: &PieceSet, goal: &SearchGoal) -> SearchBudget {
        let max_cost = match *goal {
            SearchGoal::ReachDominoes(target) => GameConfig::new(target, *initial)
                .ok()
                .and_then(|c| theory_bound(&c))
                .map(|r| r.formula_cost)
                .or_else(|| {
                    run_cooperative_from(*initial, target, crate::policy::default_max_steps(target))
                        .ok()
                        .filter(|run| run.survived())
                        .map(|run| run.script.cost() as u32)
                }),
            SearchGoal::ReachSubset(_) => None,
        };
        let fallback = 9 * goal.heuristic(initial) + initial.total_pieces() + 10;
        SearchBudget {
            max_cost: max_cost.unwrap_or(fallback).max(1),
            max_nodes: DEFAULT_MAX_NODES,
            joker_cap: SearchBudget::default_joker_cap(initial),
        }
    }

    /// Budget that makes three-domino reachability exact: until three
    /// dominoes exist only Rule 1 applies, and each Rule 1 spends two chips.
    pub fn for_d3(initial: &PieceSet) -> SearchBudget {
        SearchBudget {
            max_cost: initial.total_chips() / 2 + 1,
            max_nodes: DEFAULT_MAX_NODES,
            joker_cap: SearchBudget::default_joker_cap(initial),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Merge states that differ only by a color relabeling.
    pub canonicalize: bool,
    /// Skip states dominated by an already expanded state of no greater cost.
    pub dominance: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { canonicalize: true, dominance: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Optimal,
    UnreachableWithinBudget,
    BudgetExhausted,
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchStatus::Optimal => "optimal",
            SearchStatus::UnreachableWithinBudget => "unreachable-within-budget",
            SearchStatus::BudgetExhausted => "budget-exhausted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchResult {
    pub status: SearchStatus,
    pub cost: Option<u32>,
    pub witness: Option<ExchangeScript>,
    pub nodes_expanded: usize,
    pub frontier_peak: usize,
    /// Successors dropped for exceeding the joker cap.
    pub cap_pruned: usize,
    pub dominated_pruned: usize,
}

pub fn min_exchanges(initial: &PieceSet, goal: &SearchGoal, budget: &SearchBudget) -> SearchResult {
    min_exchanges_with(initial, goal, budget, SearchOptions::default())
}

pub fn min_exchanges_with(
    initial: &PieceSet,
    goal: &SearchGoal,
    budget: &SearchBudget,
    options: SearchOptions,
) -> SearchResult {
    let key = |s: &PieceSet| if options.canonicalize { s.canonicalize() } else { *s };
    let start = key(initial);

    // state -> (best g, parent)
    let mut best: HashMap<PieceSet, (u32, Option<PieceSet>)> = HashMap::new();
    let mut closed: HashSet<PieceSet> = HashSet::new();
    let mut expanded_list: Vec<(PieceSet, u32)> = Vec::new();
    let mut open = BinaryHeap::new();

    let mut result = SearchResult {
        status: SearchStatus::UnreachableWithinBudget,
        cost: None,
        witness: None,
        nodes_expanded: 0,
        frontier_peak: 0,
        cap_pruned: 0,
        dominated_pruned: 0,
    };

    best.insert(start, (0, None));
    let h0 = goal.heuristic(&start);
    if h0 <= budget.max_cost {
        open.push(Reverse((h0, h0, start, 0u32)));
    }
    result.frontier_peak = open.len();

    while let Some(Reverse((_, _, state, g))) = open.pop() {
        if g > best[&state].0 || !closed.insert(state) {
            continue;
        }
        if goal.is_met(&state) {
            result.status = SearchStatus::Optimal;
            result.cost = Some(g);
            result.witness = Some(materialize(initial, &best, state, key));
            return result;
        }
        if options.dominance {
            let dominated = expanded_list
                .iter()
                .any(|(t, gt)| *gt <= g && *t != state && dominates(t, &state, options.canonicalize));
            if dominated {
                result.dominated_pruned += 1;
                continue;
            }
            expanded_list.push((state, g));
        }
        if result.nodes_expanded >= budget.max_nodes {
            result.status = SearchStatus::BudgetExhausted;
            return result;
        }
        result.nodes_expanded += 1;

        let child_g = g + 1;
        state.for_each_legal(|ex| {
            let child = state.apply_unchecked(&ex);
            if child.jokers > budget.joker_cap {
                result.cap_pruned += 1;
                return;
            }
            let h = goal.heuristic(&child);
            if child_g + h > budget.max_cost {
                return;
            }
            let child = key(&child);
            let improved = match best.entry(child) {
                Entry::Vacant(v) => {
                    v.insert((child_g, Some(state)));
                    true
                }
                Entry::Occupied(mut o) if child_g < o.get().0 => {
                    o.insert((child_g, Some(state)));
                    true
                }
                Entry::Occupied(_) => false,
            };
            if improved {
                open.push(Reverse((child_g + h, h, child, child_g)));
            }
        });
        result.frontier_peak = result.frontier_peak.max(open.len());
    }
    result
}

fn dominates(big: &PieceSet, small: &PieceSet, canonical: bool) -> bool {
    if canonical {
        big.canonicalize().contains(&small.canonicalize())
    } else {
        big.contains(small)
    }
}

/// Rebuilds the exchange sequence on the caller's actual colors from the
/// chain of (possibly canonical) search states.
fn materialize(
    initial: &PieceSet,
    best: &HashMap<PieceSet, (u32, Option<PieceSet>)>,
    goal_state: PieceSet,
    key: impl Fn(&PieceSet) -> PieceSet,
) -> ExchangeScript {
    let mut chain = vec![goal_state];
    while let Some(parent) = best[chain.last().unwrap()].1 {
        chain.push(parent);
    }
    chain.reverse();

    let mut script = ExchangeScript::new();
    let mut actual = *initial;
    for next in &chain[1..] {
        let ex = actual
            .legal_exchanges()
            .into_iter()
            .find(|ex| key(&actual.apply_unchecked(ex)) == *next)
            .expect("search edge must correspond to a legal exchange");
        actual = script.push(*initial, ex, Phase::Opening).expect("legal by construction");
    }
    annotate_phases(&mut script);
    script
}

/// Whether three dominoes are reachable within `budget`.
pub fn achieves_d3(initial: &PieceSet, budget: &SearchBudget) -> bool {
    let goal = SearchGoal::ReachDominoes(3);
    min_exchanges(initial, &goal, budget).status == SearchStatus::Optimal
}
