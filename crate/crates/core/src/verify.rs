//! Exhaustive desk-scale checks: Rule-1-only play and minimal sufficient
//! sets.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, GameError, Result};
use crate::piece::{PieceSet, PERMUTATIONS};
use crate::search::{achieves_d3, SearchBudget};
use crate::theory::SufficientSet;

pub const DEFAULT_RULE1_NODES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Rule1Report {
    pub initial: PieceSet,
    /// Chips at the start, jokers included.
    pub total_chips: u32,
    pub nodes: usize,
    /// Canonical states where no Rule 1 exchange applies, sorted.
    pub terminals: Vec<PieceSet>,
    pub max_dominoes: u32,
    /// States breaking `2d + y = n`, `y >= 1`, or `y >= 2` for even `n`.
    pub violations: Vec<PieceSet>,
}

/// Explores every Rule-1-only line of play from `initial`, deduplicating on
/// canonical states.
pub fn rule1_only_enumerate(initial: &PieceSet, max_nodes: usize) -> Result<Rule1Report> {
    if initial.dominoes != 0 {
        return Err(domain("Rule-1-only enumeration starts without dominoes"));
    }
    let n = initial.total_chips();
    if n == 0 {
        return Err(domain("Rule-1-only enumeration needs at least one chip"));
    }
    let start = initial.canonicalize();
    let mut seen: HashSet<PieceSet> = HashSet::from([start]);
    let mut stack = vec![start];
    let mut terminals = BTreeSet::new();
    let mut violations = Vec::new();
    let mut max_dominoes = 0;

    while let Some(state) = stack.pop() {
        let y = state.total_chips();
        let conserved = 2 * state.dominoes + y == n;
        let floor = if n.is_multiple_of(2) { 2 } else { 1 };
        if !conserved || y < floor {
            violations.push(state);
        }
        max_dominoes = max_dominoes.max(state.dominoes);

        let mut terminal = true;
        state.for_each_rule1(|ex| {
            terminal = false;
            let next = state.apply_unchecked(&ex).canonicalize();
            if seen.insert(next) {
                stack.push(next);
            }
        });
        if terminal {
            terminals.insert(state);
        }
        if seen.len() > max_nodes {
            return Err(GameError::StateSpaceTooLarge { limit: max_nodes });
        }
    }

    Ok(Rule1Report {
        initial: *initial,
        total_chips: n,
        nodes: seen.len(),
        terminals: terminals.into_iter().collect(),
        max_dominoes,
        violations,
    })
}

/// Nonincreasing triples with total at most `max_total`.
pub fn canonical_triples(max_total: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=max_total {
        for b in 0..=a {
            for c in 0..=b {
                if a + b + c <= max_total {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Every ordered triple with total at most `max_total`.
pub fn ordered_triples(max_total: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=max_total {
        for b in 0..=max_total - a {
            for c in 0..=max_total - a - b {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Literal check against every relabeling of `M` and `N`, without
/// canonicalizing the input.
pub fn contains_sufficient_set(chips: [u32; 3]) -> bool {
    SufficientSet::ALL.iter().any(|s| {
        let base = s.counts();
        PERMUTATIONS
            .iter()
            .any(|perm| (0..3).all(|i| chips[perm[i]] >= base[i]))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalSufficientReport {
    pub max_total_chips: u32,
    pub ordered_triples: usize,
    pub canonical_triples: usize,
    pub sufficient_canonical: usize,
    /// Canonical sufficient triples none of whose proper subsets suffice,
    /// lexicographically descending.
    pub minimal_sets: Vec<[u32; 3]>,
    /// Ordered triples where search and the subset test disagree.
    pub counterexamples: Vec<[u32; 3]>,
}

impl MinimalSufficientReport {
    pub fn confirms_theorem(&self) -> bool {
        self.counterexamples.is_empty()
            && self.minimal_sets == [SufficientSet::M.counts(), SufficientSet::N.counts()]
    }
}

fn d3_reachable(chips: [u32; 3]) -> bool {
    let initial = PieceSet::colored(chips);
    achieves_d3(&initial, &SearchBudget::for_d3(&initial))
}

/// Decides three-domino reachability by search for every colored
/// distribution up to `max_total` chips, compares with the subset test, and
/// extracts the minimal sufficient sets.
pub fn verify_minimal_sufficient(max_total: u32) -> MinimalSufficientReport {
    let canonical = canonical_triples(max_total);
    let sufficient: HashMap<[u32; 3], bool> =
        canonical.par_iter().map(|t| (*t, d3_reachable(*t))).collect();
    let is_sufficient = |t: [u32; 3]| sufficient[&PieceSet::colored(t).canonicalize().chips];

    let mut minimal_sets: Vec<[u32; 3]> = canonical
        .iter()
        .copied()
        .filter(|t| sufficient[t])
        .filter(|t| {
            let mut proper_subsets = (0..=t[0])
                .flat_map(|a| (0..=t[1]).flat_map(move |b| (0..=t[2]).map(move |c| [a, b, c])))
                .filter(|s| s != t);
            !proper_subsets.any(is_sufficient)
        })
        .collect();
    minimal_sets.sort_by(|a, b| b.cmp(a));

    let ordered = ordered_triples(max_total);
    let counterexamples: Vec<[u32; 3]> = ordered
        .par_iter()
        .copied()
        .filter(|t| d3_reachable(*t) != contains_sufficient_set(*t))
        .collect();

    MinimalSufficientReport {
        max_total_chips: max_total,
        ordered_triples: ordered.len(),
        canonical_triples: canonical.len(),
        sufficient_canonical: sufficient.values().filter(|s| **s).count(),
        minimal_sets,
        counterexamples,
    }
}
