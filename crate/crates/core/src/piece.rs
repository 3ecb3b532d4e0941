//! Pieces, exchanges and the two exchange rules in joker form.
//!
//! A [`PieceSet`] is the pooled holdings of the whole group: colored chips
//! per color, jokers (wildcard chips) and dominoes. Rule 1 turns three chips
//! covering all three colors (jokers fill any missing color) into one domino
//! and one joker. Rule 2 turns three dominoes into seven jokers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result, Shortage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    C1,
    C2,
    C3,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::C1, Color::C2, Color::C3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Color> {
        Color::ALL.get(i).copied()
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Color::C1 => "C1",
            Color::C2 => "C2",
            Color::C3 => "C3",
        };
        f.write_str(s)
    }
}

/// A set of distinct colors, stored as a bitmask over [`Color::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColorSet(u8);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);
    pub const FULL: ColorSet = ColorSet(0b111);

    pub fn from_bits(bits: u8) -> ColorSet {
        ColorSet(bits & 0b111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn with(self, c: Color) -> ColorSet {
        ColorSet(self.0 | (1 << c.index()))
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 & (1 << c.index()) != 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        Color::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        iter.into_iter().fold(ColorSet::EMPTY, ColorSet::with)
    }
}

/// Pooled game pieces.
///
/// Field order matters: the derived `Ord` compares chips, then jokers, then
/// dominoes, which is the lexicographic order used for search tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct PieceSet {
    pub chips: [u32; 3],
    pub jokers: u32,
    pub dominoes: u32,
}

impl PieceSet {
    pub const fn new(chips: [u32; 3], jokers: u32, dominoes: u32) -> PieceSet {
        PieceSet { chips, jokers, dominoes }
    }

    pub const fn colored(chips: [u32; 3]) -> PieceSet {
        PieceSet::new(chips, 0, 0)
    }

    pub const fn jokers_only(jokers: u32) -> PieceSet {
        PieceSet::new([0, 0, 0], jokers, 0)
    }

    pub fn chip(&self, c: Color) -> u32 {
        self.chips[c.index()]
    }

    /// Colored chips, jokers excluded.
    pub fn colored_total(&self) -> u32 {
        self.chips.iter().sum()
    }

    /// All chips including jokers (`y` in the conservation law `n = 2d + y`).
    pub fn total_chips(&self) -> u32 {
        self.colored_total() + self.jokers
    }

    pub fn total_pieces(&self) -> u32 {
        self.total_chips() + self.dominoes
    }

    /// True when the set holds colored chips only.
    pub fn is_colored_only(&self) -> bool {
        self.jokers == 0 && self.dominoes == 0
    }

    /// Colors with at least one chip.
    pub fn represented(&self) -> ColorSet {
        Color::ALL.into_iter().filter(|c| self.chip(*c) > 0).collect()
    }

    /// Chip counts sorted in nonincreasing order; jokers and dominoes kept.
    pub fn canonicalize(&self) -> PieceSet {
        let mut chips = self.chips;
        chips.sort_unstable_by(|a, b| b.cmp(a));
        PieceSet { chips, ..*self }
    }

    pub fn is_canonical(&self) -> bool {
        self.chips[0] >= self.chips[1] && self.chips[1] >= self.chips[2]
    }

    /// Relabels colors: the chips of color `i` move to color `perm[i]`.
    pub fn permute(&self, perm: [usize; 3]) -> PieceSet {
        let mut chips = [0; 3];
        for (i, &target) in perm.iter().enumerate() {
            chips[target] = self.chips[i];
        }
        PieceSet { chips, ..*self }
    }

    /// Literal multiset inclusion: every count of `other` is at most ours.
    pub fn contains(&self, other: &PieceSet) -> bool {
        self.chips.iter().zip(other.chips.iter()).all(|(a, b)| a >= b)
            && self.jokers >= other.jokers
            && self.dominoes >= other.dominoes
    }

    /// Inclusion up to relabeling colors.
    pub fn contains_up_to_colors(&self, other: &PieceSet) -> bool {
        self.canonicalize().contains(&other.canonicalize())
    }

    pub fn apply(&self, ex: &Exchange) -> Result<PieceSet> {
        ex.check(self)?;
        Ok(self.apply_unchecked(ex))
    }

    pub(crate) fn apply_unchecked(&self, ex: &Exchange) -> PieceSet {
        let mut next = *self;
        match *ex {
            Exchange::Rule1 { colors } => {
                for c in colors.iter() {
                    next.chips[c.index()] -= 1;
                }
                next.jokers = next.jokers + 1 - ex.jokers_used();
                next.dominoes += 1;
            }
            Exchange::Rule2 => {
                next.dominoes -= 3;
                next.jokers += 7;
            }
        }
        next
    }

    /// Every distinct legal exchange, full sets first, then in increasing
    /// joker use; Rule 2 last.
    pub fn legal_exchanges(&self) -> Vec<Exchange> {
        let mut out = Vec::new();
        self.for_each_legal(|ex| out.push(ex));
        out
    }

    pub(crate) fn for_each_legal(&self, mut f: impl FnMut(Exchange)) {
        let represented = self.represented().bits();
        for r in (0..=3u32).rev() {
            if self.jokers < 3 - r {
                continue;
            }
            for bits in 0u8..8 {
                if bits.count_ones() == r && bits & !represented == 0 {
                    f(Exchange::Rule1 { colors: ColorSet::from_bits(bits) });
                }
            }
        }
        if self.dominoes >= 3 {
            f(Exchange::Rule2);
        }
    }

    pub(crate) fn for_each_rule1(&self, mut f: impl FnMut(Exchange)) {
        self.for_each_legal(|ex| {
            if ex.is_rule1() {
                f(ex)
            }
        });
    }
}

impl fmt::Display for PieceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.chips;
        write!(f, "({a},{b},{c}) x={} d={}", self.jokers, self.dominoes)
    }
}

/// One exchange with the bank.
///
/// Rule 1 names the colors it spends one chip of each; the remaining
/// `3 - colors.len()` pieces are jokers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exchange {
    Rule1 { colors: ColorSet },
    Rule2,
}

impl Exchange {
    pub const FULL_SET: Exchange = Exchange::Rule1 { colors: ColorSet::FULL };
    pub const THREE_JOKERS: Exchange = Exchange::Rule1 { colors: ColorSet::EMPTY };

    pub fn rule1(colors: &[Color]) -> Result<Exchange> {
        let set: ColorSet = colors.iter().copied().collect();
        if set.len() as usize != colors.len() {
            return Err(crate::error::domain("colors in one Rule 1 exchange must be distinct"));
        }
        Ok(Exchange::Rule1 { colors: set })
    }

    pub fn is_rule1(&self) -> bool {
        matches!(self, Exchange::Rule1 { .. })
    }

    pub fn jokers_used(&self) -> u32 {
        match self {
            Exchange::Rule1 { colors } => 3 - colors.len(),
            Exchange::Rule2 => 0,
        }
    }

    pub fn permute(&self, perm: [usize; 3]) -> Exchange {
        match *self {
            Exchange::Rule1 { colors } => Exchange::Rule1 {
                colors: colors.iter().map(|c| Color::ALL[perm[c.index()]]).collect(),
            },
            Exchange::Rule2 => Exchange::Rule2,
        }
    }

    /// Checks the precondition, naming the first missing resource.
    pub fn check(&self, state: &PieceSet) -> Result<()> {
        match *self {
            Exchange::Rule1 { colors } => {
                if let Some(c) = colors.iter().find(|c| state.chip(*c) == 0) {
                    return Err(GameError::IllegalExchange(Shortage::Color(c)));
                }
                let needed = self.jokers_used();
                if state.jokers < needed {
                    return Err(GameError::IllegalExchange(Shortage::Jokers {
                        needed,
                        available: state.jokers,
                    }));
                }
            }
            Exchange::Rule2 => {
                if state.dominoes < 3 {
                    return Err(GameError::IllegalExchange(Shortage::Dominoes {
                        needed: 3,
                        available: state.dominoes,
                    }));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Exchange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exchange::Rule1 { colors } => {
                f.write_str("R1{")?;
                for (i, c) in colors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("}")?;
                match self.jokers_used() {
                    0 => Ok(()),
                    j => write!(f, "+{j}j"),
                }
            }
            Exchange::Rule2 => f.write_str("R2"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ExchangeDoc {
    rule: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colors: Option<Vec<Color>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    jokers: Option<u32>,
}

impl Serialize for Exchange {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let doc = match self {
            Exchange::Rule1 { colors } => ExchangeDoc {
                rule: 1,
                colors: Some(colors.iter().collect()),
                jokers: Some(self.jokers_used()),
            },
            Exchange::Rule2 => ExchangeDoc { rule: 2, colors: None, jokers: None },
        };
        doc.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Exchange {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let doc = ExchangeDoc::deserialize(deserializer)?;
        match doc.rule {
            1 => {
                let colors = doc.colors.unwrap_or_default();
                let ex = Exchange::rule1(&colors).map_err(D::Error::custom)?;
                if let Some(j) = doc.jokers {
                    if j != ex.jokers_used() {
                        return Err(D::Error::custom(format!(
                            "Rule 1 with {} colors must use {} jokers, got {j}",
                            colors.len(),
                            ex.jokers_used()
                        )));
                    }
                }
                Ok(ex)
            }
            2 => {
                if doc.colors.is_some() || doc.jokers.is_some() {
                    return Err(D::Error::custom("Rule 2 takes no parameters"));
                }
                Ok(Exchange::Rule2)
            }
            other => Err(D::Error::custom(format!("unknown rule {other}"))),
        }
    }
}

/// All six relabelings of the three colors.
pub const PERMUTATIONS: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

#[cfg(test)]
mod tests {
    use super::*;

    fn rule1(colors: &[Color]) -> Exchange {
        Exchange::rule1(colors).unwrap()
    }

    #[test]
    fn full_set_yields_domino_and_joker() {
        let s = PieceSet::colored([1, 1, 1]);
        assert_eq!(s.apply(&Exchange::FULL_SET).unwrap(), PieceSet::new([0, 0, 0], 1, 1));
    }

    #[test]
    fn three_dominoes_yield_seven_jokers() {
        let s = PieceSet::new([0, 0, 0], 0, 3);
        assert_eq!(s.apply(&Exchange::Rule2).unwrap(), PieceSet::new([0, 0, 0], 7, 0));
    }

    #[test]
    fn three_jokers_act_as_full_set() {
        let s = PieceSet::jokers_only(3);
        assert_eq!(s.apply(&Exchange::THREE_JOKERS).unwrap(), PieceSet::new([0, 0, 0], 1, 1));
    }

    #[test]
    fn illegal_exchanges_name_missing_resource() {
        let s = PieceSet::new([1, 0, 0], 1, 2);
        assert_eq!(
            s.apply(&Exchange::Rule2),
            Err(GameError::IllegalExchange(Shortage::Dominoes { needed: 3, available: 2 }))
        );
        assert_eq!(
            s.apply(&rule1(&[Color::C1, Color::C2])),
            Err(GameError::IllegalExchange(Shortage::Color(Color::C2)))
        );
        assert_eq!(
            s.apply(&rule1(&[Color::C1])),
            Err(GameError::IllegalExchange(Shortage::Jokers { needed: 2, available: 1 }))
        );
    }

    #[test]
    fn duplicate_colors_rejected() {
        assert!(Exchange::rule1(&[Color::C1, Color::C1]).is_err());
    }

    #[test]
    fn legal_exchanges_examples() {
        assert!(PieceSet::colored([1, 1, 0]).legal_exchanges().is_empty());
        assert_eq!(PieceSet::new([0, 0, 0], 0, 3).legal_exchanges(), vec![Exchange::Rule2]);

        // Brute force: every subset of the colors, paired with the jokers it
        // needs, is legal exactly when the pieces are present.
        let s = PieceSet::new([1, 1, 1], 1, 0);
        let mut expected = Vec::new();
        for bits in 0u8..8 {
            let colors: Vec<Color> = (0..3).filter(|i| bits & (1 << i) != 0).map(|i| Color::ALL[i]).collect();
            let jokers = 3 - colors.len() as u32;
            if jokers <= s.jokers && colors.iter().all(|c| s.chip(*c) > 0) {
                expected.push(rule1(&colors));
            }
        }
        let mut got = s.legal_exchanges();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn canonicalize_sorts_chips() {
        assert_eq!(PieceSet::colored([1, 3, 2]).canonicalize(), PieceSet::colored([3, 2, 1]));
        let s = PieceSet::new([0, 0, 0], 4, 2);
        assert_eq!(s.canonicalize(), s);
    }

    #[test]
    fn exchange_wire_format() {
        let ex = rule1(&[Color::C2, Color::C1]);
        assert_eq!(serde_json::to_string(&ex).unwrap(), r#"{"rule":1,"colors":["C1","C2"],"jokers":1}"#);
        assert_eq!(serde_json::to_string(&Exchange::Rule2).unwrap(), r#"{"rule":2}"#);
        let back: Exchange = serde_json::from_str(r#"{"rule":1,"colors":["C3"],"jokers":2}"#).unwrap();
        assert_eq!(back, rule1(&[Color::C3]));
        assert!(serde_json::from_str::<Exchange>(r#"{"rule":1,"colors":["C3"],"jokers":1}"#).is_err());
        assert!(serde_json::from_str::<Exchange>(r#"{"rule":3}"#).is_err());
    }

    #[test]
    fn piece_set_wire_format() {
        let s = PieceSet::new([4, 3, 1], 2, 5);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"chips":[4,3,1],"jokers":2,"dominoes":5}"#);
        assert_eq!(serde_json::from_str::<PieceSet>(&json).unwrap(), s);
    }
}
