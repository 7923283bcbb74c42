//! Exact coverage of a target by TWO's union.

use serde::Serialize;

use crate::sets::{Interval, RSet, Rational};
use crate::strategy::Arena;
use crate::targets::{CantorCoverage, CantorSpec, Enumeration, TargetSpec};

/// How many of the first enumerated points the union covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialCoverage {
    pub checked: usize,
    pub covered: usize,
    /// Indices among the first `checked` points that are missed.
    pub missed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub covered: bool,
    /// The part of the space left uncovered, when the target is known to meet it.
    pub uncovered: Option<RSet>,
    /// A target point outside the union, when one is representable.
    pub witness: Option<Rational>,
    pub partial: Option<PartialCoverage>,
}

impl Coverage {
    fn yes(partial: Option<PartialCoverage>) -> Self {
        Coverage {
            covered: true,
            uncovered: None,
            witness: None,
            partial,
        }
    }

    fn no(uncovered: RSet, witness: Option<Rational>, partial: Option<PartialCoverage>) -> Self {
        Coverage {
            covered: false,
            uncovered: Some(uncovered),
            witness,
            partial,
        }
    }
}

/// Decides whether `union` contains the target. `materialized` is the
/// number of innings played; for countable targets it sets how many
/// enumerated points are reported individually.
pub fn target_covered(arena: &Arena, union: &RSet, materialized: usize) -> Coverage {
    let rest = arena.space.subtract(union);
    match &arena.target {
        TargetSpec::Full | TargetSpec::ClosedSet(_) => {
            let missed = arena.cover_target().subtract(union);
            if missed.is_empty() {
                Coverage::yes(None)
            } else {
                let w = missed.sample_point();
                Coverage::no(missed, w, None)
            }
        }
        TargetSpec::Cantor => {
            let spec = CantorSpec::new(arena.hull.clone()).expect("arena hull has positive length");
            let outside = RSet::from(arena.hull.clone()).subtract(&arena.space);
            match spec.covered_by(&union.union(&outside)) {
                CantorCoverage::Covered => Coverage::yes(None),
                CantorCoverage::Missed(p) => Coverage::no(rest, Some(p), None),
            }
        }
        TargetSpec::Countable(c) => {
            let partial = Some(partial_coverage(c.enumeration, &arena.hull, &arena.space, union, materialized));
            match enumerated_in(c.enumeration, &rest, &arena.hull) {
                None => Coverage::yes(partial),
                Some(q) => Coverage::no(rest, Some(q), partial),
            }
        }
        TargetSpec::GDelta(g) => {
            // a nondegenerate gap holds uncountably many target points
            if rest.components().iter().any(|c| !c.is_point()) {
                let w = rest
                    .components()
                    .iter()
                    .find(|c| !c.is_point())
                    .and_then(|c| non_enumerated_between(g.deleted, c, &arena.hull));
                return Coverage::no(rest, w, None);
            }
            let hit = rest
                .components()
                .iter()
                .map(Interval::lo)
                .find(|p| !g.deleted.contains(p, &arena.hull));
            match hit {
                None => Coverage::yes(None),
                Some(p) => Coverage::no(rest.clone(), Some(p.clone()), None),
            }
        }
    }
}

/// An enumerated point of `rest`, if any.
fn enumerated_in(e: Enumeration, rest: &RSet, hull: &Interval) -> Option<Rational> {
    rest.components().iter().find_map(|c| {
        if c.is_point() {
            e.contains(c.lo(), hull).then(|| c.lo().clone())
        } else {
            e.point_between(c.lo(), c.hi(), hull)
        }
    })
}

/// A rational of `c` the enumeration misses; none exists for `farey`.
fn non_enumerated_between(e: Enumeration, c: &Interval, hull: &Interval) -> Option<Rational> {
    let other = match e {
        Enumeration::Farey => return None,
        Enumeration::Dyadic => Enumeration::Triadic,
        Enumeration::Triadic => Enumeration::Dyadic,
    };
    other.point_between(c.lo(), c.hi(), hull)
}

pub(crate) fn partial_coverage(e: Enumeration, hull: &Interval, space: &RSet, union: &RSet, n: usize) -> PartialCoverage {
    let points: Vec<Rational> = e.first(n, hull).into_iter().filter(|q| space.contains_point(q)).collect();
    let missed: Vec<usize> = points
        .iter()
        .enumerate()
        .filter(|(_, q)| !union.contains_point(q))
        .map(|(i, _)| i)
        .collect();
    PartialCoverage {
        checked: points.len(),
        covered: points.len() - missed.len(),
        missed,
    }
}
