//! The deterministic cooperative policy: Rule 1 with the fewest jokers
//! whenever possible, Rule 2 otherwise, halt when neither applies.

use serde::{Deserialize, Serialize};

use crate::error::{domain, GameError, Result};
use crate::piece::{ColorSet, Exchange, PieceSet};
use crate::script::{ExchangeScript, Phase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameConfig {
    pub players: u32,
    pub initial: PieceSet,
}

impl GameConfig {
    pub fn new(players: u32, initial: PieceSet) -> Result<GameConfig> {
        let config = GameConfig { players, initial };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.players == 0 {
            return Err(domain("a game needs at least one player"));
        }
        Ok(())
    }

    /// Two colored chips per player, nothing else.
    pub fn is_standard(&self) -> bool {
        self.initial.is_colored_only() && self.initial.colored_total() == 2 * self.players
    }

    pub fn default_max_steps(&self) -> u32 {
        default_max_steps(self.players)
    }
}

pub fn default_max_steps(players: u32) -> u32 {
    50 * players + 100
}

/// The Rule 1 exchange using every represented color and jokers for the
/// rest, if the jokers are there. Never returns Rule 2.
pub fn max_principle_exchange(state: &PieceSet) -> Option<Exchange> {
    let colors: ColorSet = state.represented();
    let needed = 3 - colors.len();
    (state.jokers >= needed).then_some(Exchange::Rule1 { colors })
}

/// One step of the cooperative policy, or `None` when the game halts.
pub fn cooperative_step(state: &PieceSet) -> Option<(PieceSet, Exchange)> {
    let ex = max_principle_exchange(state)
        .or_else(|| (state.dominoes >= 3).then_some(Exchange::Rule2))?;
    Some((state.apply_unchecked(&ex), ex))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Terminal {
    /// Dominoes reached the player count.
    Goal,
    /// No exchange applies.
    Halt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CooperativeRun {
    pub terminal: Terminal,
    pub script: ExchangeScript,
}

impl CooperativeRun {
    pub fn survived(&self) -> bool {
        self.terminal == Terminal::Goal
    }
}

/// Plays the cooperative policy from `config.initial` until the pool holds
/// `players` dominoes or the policy halts.
pub fn run_cooperative(config: &GameConfig, max_steps: u32) -> Result<CooperativeRun> {
    run_cooperative_from(config.initial, config.players, max_steps)
}

pub fn run_cooperative_from(start: PieceSet, target: u32, max_steps: u32) -> Result<CooperativeRun> {
    if max_steps == 0 {
        return Err(domain("max_steps must be positive"));
    }
    let mut script = ExchangeScript::new();
    let mut state = start;
    let terminal = loop {
        if state.dominoes >= target {
            break Terminal::Goal;
        }
        let Some((_, ex)) = cooperative_step(&state) else {
            break Terminal::Halt;
        };
        if script.cost() as u32 >= max_steps {
            return Err(GameError::StepBudgetExceeded { max_steps });
        }
        state = script.push(start, ex, Phase::Opening)?;
    };
    annotate_phases(&mut script);
    Ok(CooperativeRun { terminal, script })
}

/// Tags a policy-generated script: Rule 2 steps are `rule2`; Rule 1 steps
/// after the last Rule 2 are `final`, those between two Rule 2s are
/// `mining`; before the first Rule 2, chip-spending steps are `opening` and
/// pure-joker steps `collapse`.
pub(crate) fn annotate_phases(script: &mut ExchangeScript) {
    let rule2_at: Vec<usize> = script
        .steps()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.exchange == Exchange::Rule2)
        .map(|(i, _)| i)
        .collect();
    for i in 0..script.cost() {
        let ex = script.steps()[i].exchange;
        let phase = match (ex, rule2_at.first(), rule2_at.last()) {
            (Exchange::Rule2, _, _) => Phase::Rule2,
            (_, Some(&first), Some(&last)) if i > first => {
                if i > last {
                    Phase::Final
                } else {
                    Phase::Mining
                }
            }
            (ex, _, _) if ex == Exchange::THREE_JOKERS => Phase::Collapse,
            _ => Phase::Opening,
        };
        script.set_phase(i, phase);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piece::Color;

    #[test]
    fn max_principle_examples() {
        assert_eq!(
            max_principle_exchange(&PieceSet::new([1, 1, 0], 2, 0)),
            Some(Exchange::rule1(&[Color::C1, Color::C2]).unwrap())
        );
        assert_eq!(max_principle_exchange(&PieceSet::new([2, 2, 2], 5, 0)), Some(Exchange::FULL_SET));
        assert_eq!(max_principle_exchange(&PieceSet::new([1, 0, 0], 1, 0)), None);
        assert_eq!(max_principle_exchange(&PieceSet::new([0, 0, 0], 0, 9)), None);
    }

    #[test]
    fn max_principle_uses_fewest_jokers() {
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for x in 0..4 {
                        let s = PieceSet::new([a, b, c], x, 0);
                        let fewest = s.legal_exchanges().iter().map(|e| e.jokers_used()).min();
                        assert_eq!(max_principle_exchange(&s).map(|e| e.jokers_used()), fewest, "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn cooperative_step_prefers_rule1() {
        let (next, ex) = cooperative_step(&PieceSet::new([1, 0, 0], 1, 3)).unwrap();
        assert_eq!(ex, Exchange::Rule2);
        assert_eq!(next, PieceSet::new([1, 0, 0], 8, 0));

        let (_, ex) = cooperative_step(&PieceSet::new([1, 1, 1], 0, 3)).unwrap();
        assert_eq!(ex, Exchange::FULL_SET);

        assert_eq!(cooperative_step(&PieceSet::new([0, 0, 0], 2, 2)), None);
    }

    #[test]
    fn run_reaches_goal_for_worst_case_four_players() {
        let config = GameConfig::new(4, PieceSet::colored([4, 3, 1])).unwrap();
        let run = run_cooperative(&config, config.default_max_steps()).unwrap();
        assert_eq!(run.terminal, Terminal::Goal);
        assert_eq!(run.script.cost(), 8);
        assert_eq!(run.script.end().unwrap().dominoes, 4);
        run.script.replay(config.initial).unwrap();
    }

    #[test]
    fn run_best_case_six_players() {
        let config = GameConfig::new(6, PieceSet::colored([4, 4, 4])).unwrap();
        let run = run_cooperative(&config, 1000).unwrap();
        assert_eq!(run.script.cost(), 10);
        assert_eq!(run.script.end().unwrap().dominoes, 6);
    }

    #[test]
    fn single_color_halts_immediately() {
        let config = GameConfig::new(4, PieceSet::colored([8, 0, 0])).unwrap();
        let run = run_cooperative(&config, 100).unwrap();
        assert_eq!(run.terminal, Terminal::Halt);
        assert!(run.script.is_empty());
    }

    #[test]
    fn step_budget_is_enforced() {
        let config = GameConfig::new(6, PieceSet::colored([4, 4, 4])).unwrap();
        assert_eq!(
            run_cooperative(&config, 5),
            Err(GameError::StepBudgetExceeded { max_steps: 5 })
        );
        assert!(run_cooperative(&config, 0).is_err());
    }

    #[test]
    fn phases_follow_structure() {
        let config = GameConfig::new(4, PieceSet::colored([4, 3, 1])).unwrap();
        let run = run_cooperative(&config, 100).unwrap();
        let phases: Vec<Phase> = run.script.steps().iter().map(|s| s.phase).collect();
        use Phase::*;
        assert_eq!(phases, vec![Opening, Opening, Opening, Rule2, Final, Final, Final, Final]);
    }
}
