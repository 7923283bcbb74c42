use crate::covers::{Cover, CoverError};
use crate::sets::{is_discrete, DiscreteFamily, Interval, RSet, Rational};
use crate::strategy::{Arena, InningInfo, StrategyError, TwoStrategy};
use crate::targets::Enumeration;

use super::point_radius;

/// A single interval around the `inning`-th enumerated point `q`, inside the
/// component of the first member containing `q`, of radius half the
/// distance from `q` to that component's open ends.
pub fn countable_target_move(
    enumeration: Enumeration,
    inning: usize,
    cover: &Cover,
    hull: &Interval,
    space: &RSet,
) -> Result<DiscreteFamily, CoverError> {
    let q = enumeration.nth(inning, hull);
    Ok(is_discrete(&[around_point(&q, cover, space, None)?]).expect("a single nonempty member"))
}

/// Open neighbourhood of `q` inside the first member containing it.
pub(crate) fn around_point(q: &Rational, cover: &Cover, space: &RSet, cap: Option<&Rational>) -> Result<RSet, CoverError> {
    let idx = cover
        .member_containing_point(q)
        .ok_or_else(|| CoverError::NotCovering(q.clone()))?;
    let comp = cover.members()[idx].component_containing(q).expect("member contains q");
    let radius = match (point_radius(comp, q), cap) {
        (Some(r), Some(c)) => Some(r.min(c.clone())),
        (r, c) => r.or_else(|| c.cloned()),
    };
    let around = match radius {
        Some(r) => RSet::from(Interval::open(q - &r, q + &r).expect("radius > 0")).intersect(&RSet::from(comp.clone())),
        None => RSet::from(comp.clone()),
    };
    Ok(around.intersect(space))
}

/// `two:countable:<enum>`: in the inning numbered `k` covers `q_k`.
pub struct CountableTwo {
    enumeration: Enumeration,
    hull: Interval,
    space: RSet,
}

impl CountableTwo {
    pub fn new(arena: &Arena, enumeration: Enumeration) -> Self {
        CountableTwo {
            enumeration,
            hull: arena.hull.clone(),
            space: arena.space.clone(),
        }
    }
}

impl TwoStrategy for CountableTwo {
    fn respond(&mut self, info: &InningInfo, cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        Ok(countable_target_move(self.enumeration, info.step, cover, &self.hull, &self.space)?.into_members())
    }
}
