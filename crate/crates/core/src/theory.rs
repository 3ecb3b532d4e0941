//! Closed-form results and constructive plans.
//!
//! Every plan generator builds its script through [`ExchangeScript::push`],
//! so a returned plan has already been replayed through the rules.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, GameError, Result};
use crate::piece::{Color, ColorSet, Exchange, PieceSet};
use crate::policy::{run_cooperative, GameConfig};
use crate::script::{ExchangeScript, Phase};
use crate::search::{achieves_d3, SearchBudget};

/// Final joker count of a pure-joker Rule 1 collapse: 1 for odd, 2 for even.
pub fn phi(x: u32) -> Result<u32> {
    match x {
        0 => Err(domain("phi is defined for x >= 1")),
        x if x % 2 == 1 => Ok(1),
        _ => Ok(2),
    }
}

/// Dominoes produced by collapsing `x` jokers with Rule 1 alone.
pub fn collapse_dominoes(x: u32) -> Result<u32> {
    Ok((x - phi(x)?) / 2)
}

/// Spends `x` jokers three at a time until fewer than three remain.
pub fn joker_collapse_plan(x: u32) -> Result<ExchangeScript> {
    let steps = collapse_dominoes(x)?;
    let start = PieceSet::jokers_only(x);
    let mut script = ExchangeScript::new();
    for _ in 0..steps {
        script.push(start, Exchange::THREE_JOKERS, Phase::Collapse)?;
    }
    Ok(script)
}

/// Rule 2 followed by three pure-joker Rule 1 exchanges: net one extra
/// joker at unchanged domino count. Legal from any state with three or more
/// dominoes.
fn mine(script: &mut ExchangeScript, start: PieceSet) -> Result<()> {
    script.push(start, Exchange::Rule2, Phase::Rule2)?;
    for _ in 0..3 {
        script.push(start, Exchange::THREE_JOKERS, Phase::Mining)?;
    }
    Ok(())
}

/// Joker mining from three dominoes and `r` jokers.
pub fn joker_mining_plan(r: u32) -> Result<ExchangeScript> {
    let mut script = ExchangeScript::new();
    mine(&mut script, PieceSet::new([0, 0, 0], r, 3))?;
    Ok(script)
}

/// Turns one domino's worth of joker shortfall into a new domino: mine until
/// three jokers are available, then spend them.
fn create_domino(script: &mut ExchangeScript, start: PieceSet) -> Result<()> {
    while script.end_or(start).jokers < 3 {
        mine(script, start)?;
    }
    script.push(start, Exchange::THREE_JOKERS, Phase::Collapse)?;
    Ok(())
}

/// Domino creation from three dominoes and `r` jokers, `r` in {0, 1}.
pub fn domino_creation_plan(r: u32) -> Result<ExchangeScript> {
    if r > 1 {
        return Err(domain(format!("domino creation starts from 0 or 1 jokers, got {r}")));
    }
    let mut script = ExchangeScript::new();
    create_domino(&mut script, PieceSet::new([0, 0, 0], r, 3))?;
    Ok(script)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SufficientSet {
    M,
    N,
}

impl SufficientSet {
    pub const ALL: [SufficientSet; 2] = [SufficientSet::M, SufficientSet::N];

    pub fn counts(self) -> [u32; 3] {
        match self {
            SufficientSet::M => [3, 3, 1],
            SufficientSet::N => [3, 2, 2],
        }
    }

    pub fn pieces(self) -> PieceSet {
        PieceSet::colored(self.counts())
    }

    /// Three Rule 1 exchanges reaching three dominoes and one joker, on
    /// canonical color positions: `order[k]` is the actual color holding the
    /// k-th largest count.
    fn opening(self, order: [Color; 3]) -> [Exchange; 3] {
        let [top, mid, _] = order;
        let pair = Exchange::Rule1 { colors: ColorSet::EMPTY.with(top).with(mid) };
        let single = Exchange::Rule1 { colors: ColorSet::EMPTY.with(top) };
        match self {
            SufficientSet::M => [Exchange::FULL_SET, pair, pair],
            SufficientSet::N => [Exchange::FULL_SET, Exchange::FULL_SET, single],
        }
    }
}

impl fmt::Display for SufficientSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.counts();
        let name = match self {
            SufficientSet::M => "M",
            SufficientSet::N => "N",
        };
        write!(f, "{name}=({a},{b},{c})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictMethod {
    SubsetCheck,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvabilityVerdict {
    pub solvable: bool,
    pub witness: Option<SufficientSet>,
    pub method: VerdictMethod,
}

/// The sufficient set contained in `chips` (up to relabeling), `M` first.
pub fn sufficient_witness(chips: [u32; 3]) -> Option<SufficientSet> {
    let canon = PieceSet::colored(chips).canonicalize();
    SufficientSet::ALL.into_iter().find(|s| canon.contains(&s.pieces()))
}

/// Whether the pool can ever reach three dominoes (and so any number).
///
/// Colored-only inputs use the subset test against `M` and `N`; anything
/// holding jokers or dominoes is decided by exhaustive search.
pub fn solvable(initial: &PieceSet) -> SolvabilityVerdict {
    if initial.is_colored_only() {
        let witness = sufficient_witness(initial.chips);
        SolvabilityVerdict { solvable: witness.is_some(), witness, method: VerdictMethod::SubsetCheck }
    } else {
        let budget = SearchBudget::for_d3(initial);
        SolvabilityVerdict {
            solvable: achieves_d3(initial, &budget),
            witness: None,
            method: VerdictMethod::Search,
        }
    }
}

/// Actual colors ordered by count, largest first; ties broken by label.
fn color_order(state: &PieceSet) -> [Color; 3] {
    let mut order = Color::ALL;
    order.sort_by(|a, b| state.chip(*b).cmp(&state.chip(*a)).then(a.cmp(b)));
    order
}

/// The explicit construction: the three-exchange opening on a contained
/// sufficient set, then domino creation until `players` dominoes are held.
pub fn d3_composition_plan(config: &GameConfig) -> Result<ExchangeScript> {
    if config.players <= 3 {
        return Err(GameError::TrivialGame { players: config.players });
    }
    let start = config.initial;
    if !start.is_colored_only() {
        return Err(domain("the explicit construction starts from colored chips only"));
    }
    let witness = sufficient_witness(start.chips).ok_or(GameError::NotSolvable)?;
    let mut script = ExchangeScript::new();
    for ex in witness.opening(color_order(&start)) {
        script.push(start, ex, Phase::Opening)?;
    }
    while script.end_or(start).dominoes < config.players {
        create_domino(&mut script, start)?;
    }
    Ok(script)
}

/// A script taking `config.initial` to at least `players` dominoes.
///
/// Uses the cooperative policy when it succeeds and falls back to the
/// explicit construction otherwise.
pub fn survival_plan(config: &GameConfig) -> Result<ExchangeScript> {
    config.validate()?;
    if config.players <= 3 {
        return Err(GameError::TrivialGame { players: config.players });
    }
    if !solvable(&config.initial).solvable {
        return Err(GameError::NotSolvable);
    }
    match run_cooperative(config, config.default_max_steps()) {
        Ok(run) if run.survived() => Ok(run.script),
        _ => d3_composition_plan(config),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Worst,
    Best,
    General,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Worst => "worst",
            Scenario::Best => "best",
            Scenario::General => "general",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CostReport {
    pub players: u32,
    pub scenario: Scenario,
    pub formula_cost: u32,
    pub plan_cost: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
}

fn require_nontrivial(p: u32) -> Result<()> {
    if p < 4 {
        return Err(domain(format!("p = {p}: games need at least 4 players")));
    }
    Ok(())
}

/// `M` plus `2p - 7` chips of its most frequent color: `(2p - 4, 3, 1)`.
pub fn worst_case_distribution(p: u32) -> Result<PieceSet> {
    require_nontrivial(p)?;
    Ok(PieceSet::colored([3 + (2 * p - 7), 3, 1]))
}

/// `m` full sets for `2p = 3m`, `p >= 6`.
pub fn best_case_distribution(p: u32) -> Result<PieceSet> {
    let m = best_case_m(p)?;
    Ok(PieceSet::colored([m, m, m]))
}

fn best_case_m(p: u32) -> Result<u32> {
    if p < 6 || !(2 * p).is_multiple_of(3) {
        return Err(domain(format!("best case needs p >= 6 with 2p divisible by 3, got p = {p}")));
    }
    Ok(2 * p / 3)
}

/// `m` full sets plus the `r = 2p mod 3` leftover chips on distinct colors.
pub fn full_sets_distribution(p: u32) -> PieceSet {
    let (m, r) = (2 * p / 3, 2 * p % 3);
    PieceSet::colored([m + u32::from(r >= 1), m + u32::from(r >= 2), m])
}

/// Worst-case construction: opening on `M`, then per extra domino one
/// mining cycle and a Rule 1 spending one surplus chip and two jokers.
pub fn worst_case_plan(p: u32) -> Result<ExchangeScript> {
    let start = worst_case_distribution(p)?;
    let mut script = ExchangeScript::new();
    for ex in SufficientSet::M.opening(Color::ALL) {
        script.push(start, ex, Phase::Opening)?;
    }
    let surplus = Exchange::Rule1 { colors: ColorSet::EMPTY.with(Color::C1) };
    while script.end_or(start).dominoes < p {
        mine(&mut script, start)?;
        script.push(start, surplus, Phase::Final)?;
    }
    Ok(script)
}

/// Best-case construction: spend every full set, collapse the jokers, one
/// Rule 2, then collapse the nine jokers.
pub fn best_case_plan(p: u32) -> Result<ExchangeScript> {
    let m = best_case_m(p)?;
    let start = PieceSet::colored([m, m, m]);
    let mut script = full_sets_then_collapse(start, m)?;
    script.push(start, Exchange::Rule2, Phase::Rule2)?;
    while script.end_or(start).dominoes < p {
        script.push(start, Exchange::THREE_JOKERS, Phase::Final)?;
    }
    Ok(script)
}

fn full_sets_then_collapse(start: PieceSet, m: u32) -> Result<ExchangeScript> {
    let mut script = ExchangeScript::new();
    for _ in 0..m {
        script.push(start, Exchange::FULL_SET, Phase::Opening)?;
    }
    while script.end_or(start).jokers >= 3 {
        script.push(start, Exchange::THREE_JOKERS, Phase::Collapse)?;
    }
    Ok(script)
}

/// General full-set construction: spend the full sets, collapse, then run
/// domino creation on the resulting dominoes.
pub fn general_plan(p: u32) -> Result<ExchangeScript> {
    let (m, _) = general_params(p)?;
    let start = full_sets_distribution(p);
    let mut script = full_sets_then_collapse(start, m)?;
    while script.end_or(start).dominoes < p {
        create_domino(&mut script, start)?;
    }
    Ok(script)
}

fn general_params(p: u32) -> Result<(u32, u32)> {
    let (m, r) = (2 * p / 3, 2 * p % 3);
    if m < 3 {
        return Err(domain(format!("general bound needs m = (2p - r)/3 >= 3, got m = {m}")));
    }
    Ok((m, r))
}

pub fn worst_case_cost(p: u32) -> Result<CostReport> {
    require_nontrivial(p)?;
    Ok(CostReport {
        players: p,
        scenario: Scenario::Worst,
        formula_cost: 5 * p - 12,
        plan_cost: worst_case_plan(p)?.cost() as u32,
        m: None,
        r: None,
        q: Some(2 * p - 7),
        cap: None,
    })
}

pub fn best_case_cost(p: u32) -> Result<CostReport> {
    let m = best_case_m(p)?;
    Ok(CostReport {
        players: p,
        scenario: Scenario::Best,
        formula_cost: p + 4,
        plan_cost: best_case_plan(p)?.cost() as u32,
        m: Some(m),
        r: Some(0),
        q: None,
        cap: None,
    })
}

/// Upper bound `p + 4r + 8` for `m` full sets with `2p = 3m + r`.
pub fn general_upper_bound(p: u32) -> Result<CostReport> {
    let (m, r) = general_params(p)?;
    Ok(CostReport {
        players: p,
        scenario: Scenario::General,
        formula_cost: p + 4 * r + 8,
        plan_cost: general_plan(p)?.cost() as u32,
        m: Some(m),
        r: Some(r),
        q: None,
        cap: Some(p + 16),
    })
}

/// The closed-form cost that applies to `config`, if any: worst case for a
/// sufficient set plus `2p - 7` chips of one color, best case for `m` full
/// sets with `2p = 3m`, general bound for the full-sets distribution.
pub fn theory_bound(config: &GameConfig) -> Option<CostReport> {
    let p = config.players;
    let initial = config.initial;
    if p < 4 || !initial.is_colored_only() {
        return None;
    }
    let canon = initial.canonicalize();
    let worst_like = SufficientSet::ALL.into_iter().any(|s| {
        let base = s.pieces();
        canon.colored_total() == 2 * p
            && crate::piece::PERMUTATIONS.iter().any(|perm| {
                let extra: Vec<i64> = (0..3)
                    .map(|i| initial.chips[i] as i64 - base.permute(*perm).chips[i] as i64)
                    .collect();
                extra.iter().all(|e| *e >= 0) && extra.iter().filter(|e| **e > 0).count() <= 1
            })
    });
    if worst_like {
        return worst_case_cost(p).ok();
    }
    if canon == full_sets_distribution(p) {
        return best_case_cost(p).ok().or_else(|| general_upper_bound(p).ok());
    }
    None
}

/// Rule 1 only: spend `m` full sets of `(m + 1, m, m)` then collapse the
/// jokers, reaching `(3m - 1)/2` dominoes.
pub fn rule1_construction(m: u32) -> Result<ExchangeScript> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(domain(format!("construction needs odd m >= 1, got {m}")));
    }
    full_sets_then_collapse(PieceSet::colored([m + 1, m, m]), m)
}
