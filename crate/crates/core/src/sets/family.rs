//! Predicates on finite families of sets: discreteness, disjointness,
//! refinement, and the local discreteness radius at a point.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use super::{Interval, RSet, Rational};

/// A finite family whose closures are pairwise disjoint.
///
/// For finite families on the line this is the same as discreteness: a
/// point outside every closure has positive distance to each of them, and
/// a point in one closure has positive distance to all the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteFamily {
    members: Vec<RSet>,
    min_gap: Option<Rational>,
}

impl DiscreteFamily {
    pub fn members(&self) -> &[RSet] {
        &self.members
    }

    pub fn into_members(self) -> Vec<RSet> {
        self.members
    }

    /// Smallest distance between closures of distinct members; `None` when
    /// the family has at most one member.
    pub fn min_gap(&self) -> Option<&Rational> {
        self.min_gap.as_ref()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn union(&self) -> RSet {
        RSet::union_all(&self.members)
    }

    pub fn empty() -> Self {
        DiscreteFamily {
            members: Vec::new(),
            min_gap: None,
        }
    }
}

/// A finite family of pairwise disjoint sets. Closures may touch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointFamily {
    members: Vec<RSet>,
    min_gap: Option<Rational>,
}

impl DisjointFamily {
    pub fn members(&self) -> &[RSet] {
        &self.members
    }

    pub fn into_members(self) -> Vec<RSet> {
        self.members
    }

    /// Smallest closure distance between distinct members (zero when closures touch).
    pub fn min_gap(&self) -> Option<&Rational> {
        self.min_gap.as_ref()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilyRejection {
    EmptyMember {
        index: usize,
    },
    /// Two members whose closures (or, for disjointness, the sets
    /// themselves) share `point`.
    SharedPoint {
        first: usize,
        second: usize,
        #[serde(serialize_with = "crate::serde_util::rational")]
        point: Rational,
    },
}

impl std::fmt::Display for FamilyRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyRejection::EmptyMember { index } => write!(f, "member {index} is empty"),
            FamilyRejection::SharedPoint { first, second, point } => {
                write!(f, "members {first} and {second} share {}", super::fmt_rational(point))
            }
        }
    }
}

fn check_nonempty(members: &[RSet]) -> Result<(), FamilyRejection> {
    match members.iter().position(RSet::is_empty) {
        Some(index) => Err(FamilyRejection::EmptyMember { index }),
        None => Ok(()),
    }
}

/// Accepts a family exactly when the closures of its members are pairwise disjoint.
pub fn is_discrete(members: &[RSet]) -> Result<DiscreteFamily, FamilyRejection> {
    check_nonempty(members)?;
    let closures: Vec<RSet> = members.iter().map(RSet::closure).collect();
    match sweep_min_gap(&closures) {
        Some(min_gap) => Ok(DiscreteFamily {
            members: members.to_vec(),
            min_gap,
        }),
        None => Err(first_shared_point(&closures)),
    }
}

/// Accepts a family exactly when its members are pairwise disjoint.
pub fn is_disjoint(members: &[RSet]) -> Result<DisjointFamily, FamilyRejection> {
    check_nonempty(members)?;
    // for disjoint sets the sweep's gaps are the closure distances, zero where closures touch
    let Some(min_gap) = sweep_min_gap(members) else {
        return Err(first_shared_point(members));
    };
    Ok(DisjointFamily {
        members: members.to_vec(),
        min_gap,
    })
}

/// Sweep over all components sorted by left end. Returns `None` if two
/// different members share a point, otherwise the minimum closure gap
/// between different members (`Some(None)` for fewer than two members).
///
/// Within one member components are canonical, so two components of the
/// same member never overlap.
fn sweep_min_gap(sets: &[RSet]) -> Option<Option<Rational>> {
    let mut comps: Vec<(&Interval, usize)> = sets
        .iter()
        .enumerate()
        .flat_map(|(owner, s)| s.components().iter().map(move |c| (c, owner)))
        .collect();
    comps.sort_by(|a, b| a.0.cmp_lo(b.0));

    // Furthest right end seen so far, and the furthest among other owners.
    let mut best: Option<(&Interval, usize)> = None;
    let mut runner_up: Option<(&Interval, usize)> = None;
    let mut min_gap: Option<Rational> = None;
    for &(c, owner) in &comps {
        let other = match best {
            Some((_, o)) if o != owner => best,
            _ => runner_up,
        };
        if let Some((prev, _)) = other {
            if overlaps_from_left(prev, c) {
                return None;
            }
            let gap = c.lo() - prev.hi();
            if min_gap.as_ref().is_none_or(|m| &gap < m) {
                min_gap = Some(gap);
            }
        }
        match best {
            None => best = Some((c, owner)),
            Some((b, o)) if o == owner => {
                if further_right(c, b) {
                    best = Some((c, owner));
                }
            }
            Some((b, o)) => {
                if further_right(c, b) {
                    runner_up = Some((b, o));
                    best = Some((c, owner));
                } else if runner_up.is_none_or(|(r, _)| further_right(c, r)) {
                    runner_up = Some((c, owner));
                }
            }
        }
    }
    Some(min_gap)
}

fn further_right(a: &Interval, b: &Interval) -> bool {
    match a.hi().cmp(b.hi()) {
        Ordering::Greater => true,
        Ordering::Equal => !a.hi_open() && b.hi_open(),
        Ordering::Less => false,
    }
}

/// `prev` starts no later than `c`; do they share a point?
fn overlaps_from_left(prev: &Interval, c: &Interval) -> bool {
    match c.lo().cmp(prev.hi()) {
        Ordering::Less => true,
        Ordering::Equal => !c.lo_open() && !prev.hi_open(),
        Ordering::Greater => false,
    }
}

fn first_shared_point(sets: &[RSet]) -> FamilyRejection {
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let common = sets[i].intersect(&sets[j]);
            if let Some(point) = common.sample_point() {
                return FamilyRejection::SharedPoint {
                    first: i,
                    second: j,
                    point,
                };
            }
        }
    }
    unreachable!("sweep reported an overlap that pairwise search cannot find")
}

/// Union of the closures of a family.
pub fn closure_union(members: &[RSet]) -> RSet {
    RSet::normalize(
        members
            .iter()
            .flat_map(|m| m.components().iter().map(Interval::closure)),
    )
}

/// Supremum radius of an open ball around a point meeting at most one member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Radius {
    Finite(Rational),
    Infinite,
}

/// The second smallest distance from `x` to the members' closures.
pub fn witness_radius(family: &[RSet], x: &Rational) -> Radius {
    let mut distances: Vec<Rational> = family
        .iter()
        .filter_map(|m| m.distance_to_point(x))
        .collect();
    if distances.len() < 2 {
        return Radius::Infinite;
    }
    distances.sort();
    Radius::Finite(distances.swap_remove(1))
}

/// For each member, the index of the first cover element containing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refinement {
    pub witnesses: Vec<Option<usize>>,
}

impl Refinement {
    pub fn holds(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.witnesses.iter().position(Option::is_none)
    }
}

pub fn refines(family: &[RSet], cover: &[RSet]) -> Refinement {
    // a member with hull [a,b] can only sit in cover elements whose hull
    // starts in [b - longest, a]; search that window by left end
    let mut by_lo: Vec<(Interval, usize)> = cover
        .iter()
        .enumerate()
        .filter_map(|(i, u)| u.hull().map(|h| (h, i)))
        .collect();
    by_lo.sort_by(|x, y| x.0.lo().cmp(y.0.lo()).then(x.1.cmp(&y.1)));
    let longest = by_lo.iter().map(|(h, _)| h.length()).max();
    let witnesses = family
        .iter()
        .map(|member| {
            let Some(m) = member.hull() else {
                return (!cover.is_empty()).then_some(0);
            };
            let longest = longest.as_ref()?;
            let from = m.hi() - longest;
            let start = by_lo.partition_point(|(h, _)| h.lo() < &from);
            let end = by_lo.partition_point(|(h, _)| h.lo() <= m.lo());
            by_lo[start..end.max(start)]
                .iter()
                .filter(|(h, i)| h.contains_interval(&m) && member.is_subset(&cover[*i]))
                .map(|(_, i)| *i)
                .min()
        })
        .collect();
    Refinement { witnesses }
}

impl Default for Radius {
    fn default() -> Self {
        Radius::Infinite
    }
}

impl Radius {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Radius::Finite(r) => Some(r),
            Radius::Infinite => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Radius::Finite(r) => r > &Rational::zero(),
            Radius::Infinite => true,
        }
    }
}
