//! TWO's strategies.

mod banach_mazur;
mod bots;
mod cantor;
mod countable;
mod halving;
mod puncture;

use std::fmt;
use std::str::FromStr;

pub use banach_mazur::{bm_two_first_category, middle_fraction};
pub use bots::{EmptyTwo, FirstMemberTwo, GreedyTwo};
pub use cantor::{cantor_one_shot, CantorShot, CantorTwo};
pub use countable::{countable_target_move, CountableTwo};
pub use halving::{
    halving_refinement, halving_step, limit_move, needs_extension, Halving, HalvingState, HalvingTwo,
};
pub use puncture::{chain_puncture_refinement, puncture_cleanup, ChainPunctureTwo, Punctured};

use crate::sets::{half, Interval, Rational};
use crate::strategy::{Arena, StrategyError, TwoStrategy};
use crate::targets::Enumeration;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoId {
    Halving,
    HalvingOmegaPlus1,
    CantorOneshot,
    Countable(Enumeration),
    ChainPuncture,
    /// Banach–Mazur only: avoid the enumerated points one at a time.
    BmFirstCategory(Enumeration),
    Empty,
    FirstMember,
    Greedy,
}

impl TwoId {
    /// The adversaries ONE is expected to beat in the ω-game.
    pub fn catalog() -> Vec<TwoId> {
        vec![
            TwoId::Empty,
            TwoId::FirstMember,
            TwoId::Greedy,
            TwoId::Halving,
            TwoId::Countable(Enumeration::Farey),
        ]
    }

    pub fn build(self, arena: &Arena) -> Result<Box<dyn TwoStrategy>, StrategyError> {
        Ok(match self {
            TwoId::Halving => Box::new(HalvingTwo::new(arena, false)),
            TwoId::HalvingOmegaPlus1 => Box::new(HalvingTwo::new(arena, true)),
            TwoId::CantorOneshot => Box::new(CantorTwo::new(arena)?),
            TwoId::Countable(e) => Box::new(CountableTwo::new(arena, e)),
            TwoId::ChainPuncture => Box::new(ChainPunctureTwo::new(arena)),
            TwoId::BmFirstCategory(_) => {
                return Err(StrategyError::Unsupported(
                    "bm-first-category plays the Banach-Mazur game, not a cover game".into(),
                ))
            }
            TwoId::Empty => Box::new(EmptyTwo),
            TwoId::FirstMember => Box::new(FirstMemberTwo),
            TwoId::Greedy => Box::new(GreedyTwo),
        })
    }
}

impl fmt::Display for TwoId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoId::Halving => f.write_str("two:halving"),
            TwoId::HalvingOmegaPlus1 => f.write_str("two:halving-omega-plus-1"),
            TwoId::CantorOneshot => f.write_str("two:cantor-oneshot"),
            TwoId::Countable(e) => write!(f, "two:countable:{e}"),
            TwoId::ChainPuncture => f.write_str("two:chain-puncture"),
            TwoId::BmFirstCategory(e) => write!(f, "two:bm-first-category:{e}"),
            TwoId::Empty => f.write_str("two:empty"),
            TwoId::FirstMember => f.write_str("two:first-member"),
            TwoId::Greedy => f.write_str("two:greedy"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown strategy {0:?}")]
pub struct UnknownStrategy(pub String);

impl FromStr for TwoId {
    type Err = UnknownStrategy;
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s = input.trim();
        let s = s.strip_prefix("two:").unwrap_or(s);
        let unknown = || UnknownStrategy(input.to_string());
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let enumeration = |a: Option<&str>| -> Result<Enumeration, UnknownStrategy> {
            a.unwrap_or("farey").parse().map_err(|_| unknown())
        };
        Ok(match (head, arg) {
            ("halving", None) => TwoId::Halving,
            ("halving-omega-plus-1", None) => TwoId::HalvingOmegaPlus1,
            ("cantor-oneshot", None) => TwoId::CantorOneshot,
            ("countable", a) => TwoId::Countable(enumeration(a)?),
            ("chain-puncture", None) => TwoId::ChainPuncture,
            ("bm-first-category", a) => TwoId::BmFirstCategory(enumeration(a)?),
            ("empty", None) => TwoId::Empty,
            ("first-member", None) => TwoId::FirstMember,
            ("greedy", None) => TwoId::Greedy,
            _ => return Err(unknown()),
        })
    }
}

/// Half the distance from `x` to the nearer open end of `comp`; an included
/// end lies on the boundary of the space and imposes nothing. `None` when
/// neither end constrains.
pub(crate) fn point_radius(comp: &Interval, x: &Rational) -> Option<Rational> {
    let left = comp.lo_open().then(|| x - comp.lo());
    let right = comp.hi_open().then(|| comp.hi() - x);
    [left, right].into_iter().fold(None, min_opt).map(|d| half(&d))
}

/// Room between `piece` and the open ends of the component containing it.
pub(crate) fn end_slack(comp: &Interval, piece: &Interval) -> (Option<Rational>, Option<Rational>) {
    (
        comp.lo_open().then(|| piece.lo() - comp.lo()),
        comp.hi_open().then(|| comp.hi() - piece.hi()),
    )
}

pub(crate) fn min_opt(acc: Option<Rational>, x: Option<Rational>) -> Option<Rational> {
    match (acc, x) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for s in [
            "two:halving",
            "two:halving-omega-plus-1",
            "two:cantor-oneshot",
            "two:countable:triadic",
            "two:chain-puncture",
            "two:bm-first-category:farey",
            "two:empty",
            "two:first-member",
            "two:greedy",
        ] {
            assert_eq!(s.parse::<TwoId>().unwrap().to_string(), s);
        }
        assert_eq!("greedy".parse::<TwoId>().unwrap(), TwoId::Greedy);
        assert_eq!("countable".parse::<TwoId>().unwrap(), TwoId::Countable(Enumeration::Farey));
        assert!("two:clever".parse::<TwoId>().is_err());
    }
}
