use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Interval, Rational, SetError};

/// A finite union of intervals in canonical form: components sorted,
/// pairwise disjoint, and no two of them mergeable into one interval.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RSet {
    components: Vec<Interval>,
}

impl RSet {
    pub fn empty() -> Self {
        RSet::default()
    }

    pub fn normalize<I: IntoIterator<Item = Interval>>(intervals: I) -> Self {
        let mut items: Vec<Interval> = intervals.into_iter().collect();
        items.sort_by(Interval::cmp_lo);
        let mut components: Vec<Interval> = Vec::with_capacity(items.len());
        for next in items {
            match components.last_mut() {
                Some(cur) if cur.merges_with(&next) => cur.absorb(&next),
                _ => components.push(next),
            }
        }
        RSet { components }
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn union(&self, other: &RSet) -> RSet {
        RSet::normalize(self.components.iter().chain(&other.components).cloned())
    }

    pub fn union_all<'a, I: IntoIterator<Item = &'a RSet>>(sets: I) -> RSet {
        RSet::normalize(sets.into_iter().flat_map(|s| s.components.iter().cloned()))
    }

    pub fn intersect(&self, other: &RSet) -> RSet {
        let (a, b) = (&self.components, &other.components);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            if let Some(x) = a[i].intersect(&b[j]) {
                out.push(x);
            }
            // advance whichever component ends first
            match cmp_hi(&a[i], &b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        RSet::normalize(out)
    }

    pub fn subtract(&self, other: &RSet) -> RSet {
        match self.hull() {
            None => RSet::empty(),
            Some(h) => self.intersect(&other.complement_within(&h)),
        }
    }

    /// `h ∖ self`.
    pub fn complement_within(&self, h: &Interval) -> RSet {
        let mut out = Vec::new();
        let mut lo = h.lo().clone();
        let mut lo_open = h.lo_open();
        for c in &self.components {
            if let Some(gap) = Interval::try_new(lo, c.lo().clone(), lo_open, !c.lo_open()) {
                out.extend(gap.intersect(h));
            }
            lo = c.hi().clone();
            lo_open = !c.hi_open();
        }
        if let Some(gap) = Interval::try_new(lo, h.hi().clone(), lo_open, h.hi_open()) {
            out.extend(gap.intersect(h));
        }
        RSet::normalize(out)
    }

    pub fn closure(&self) -> RSet {
        RSet::normalize(self.components.iter().map(Interval::closure))
    }

    pub fn interior(&self) -> RSet {
        RSet::normalize(self.components.iter().filter_map(Interval::interior))
    }

    pub fn measure(&self) -> Rational {
        self.components
            .iter()
            .fold(Rational::zero(), |acc, c| acc + c.length())
    }

    pub fn is_subset(&self, other: &RSet) -> bool {
        let b = &other.components;
        let mut j = 0;
        for a in &self.components {
            while j < b.len() && ends_before(&b[j], a) {
                j += 1;
            }
            if j == b.len() || !b[j].contains_interval(a) {
                return false;
            }
        }
        true
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        let idx = self.components.partition_point(|c| c.lo() <= x);
        idx > 0 && self.components[idx - 1].contains(x)
    }

    pub fn is_closed(&self) -> bool {
        self.components.iter().all(Interval::is_closed)
    }

    pub fn is_open(&self) -> bool {
        self.components.iter().all(Interval::is_open)
    }

    /// Openness in the subspace topology of `space`: a closed endpoint is
    /// allowed only where `space` has no points on the far side of it.
    pub fn is_open_in(&self, space: &RSet) -> bool {
        if !self.is_subset(space) {
            return false;
        }
        self.components.iter().all(|c| {
            let lo_ok = c.lo_open()
                || !space
                    .components
                    .iter()
                    .any(|y| y.lo() < c.lo() && y.hi() >= c.lo());
            let hi_ok = c.hi_open()
                || !space
                    .components
                    .iter()
                    .any(|y| y.hi() > c.hi() && y.lo() <= c.hi());
            lo_ok && hi_ok
        })
    }

    /// Smallest closed interval containing the set.
    pub fn hull(&self) -> Option<Interval> {
        let first = self.components.first()?;
        let last = self.components.last()?;
        Interval::closed(first.lo().clone(), last.hi().clone()).ok()
    }

    /// Single component, if the set is an interval.
    pub fn as_interval(&self) -> Option<&Interval> {
        match self.components.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }

    /// Distance between the closures of two nonempty sets.
    pub fn closure_distance(&self, other: &RSet) -> Option<Rational> {
        if self.is_empty() || other.is_empty() {
            return None;
        }
        let a = self.closure();
        let b = other.closure();
        let bc = &b.components;
        let mut best: Option<Rational> = None;
        for x in &a.components {
            let k = bc.partition_point(|y| y.lo() <= x.hi());
            let near = [k.checked_sub(1), Some(k)];
            for idx in near.into_iter().flatten() {
                if let Some(y) = bc.get(idx) {
                    let g = x.gap(y);
                    if best.as_ref().is_none_or(|b| &g < b) {
                        best = Some(g);
                    }
                }
            }
        }
        best
    }

    pub fn distance_to_point(&self, x: &Rational) -> Option<Rational> {
        self.components.iter().map(|c| c.distance_to(x)).min()
    }

    /// Some point of the set: the leftmost one when it exists.
    pub fn sample_point(&self) -> Option<Rational> {
        self.components.first().map(Interval::sample_point)
    }

    /// Largest component by length; ties go to the leftmost.
    pub fn largest_component(&self) -> Option<&Interval> {
        let mut best: Option<&Interval> = None;
        for c in &self.components {
            if best.is_none_or(|b| c.length() > b.length()) {
                best = Some(c);
            }
        }
        best
    }

    pub fn component_containing(&self, x: &Rational) -> Option<&Interval> {
        let idx = self.components.partition_point(|c| c.lo() <= x);
        idx.checked_sub(1)
            .map(|i| &self.components[i])
            .filter(|c| c.contains(x))
    }
}

fn cmp_hi(a: &Interval, b: &Interval) -> Ordering {
    a.hi()
        .cmp(b.hi())
        // an open right end stops before a closed one at the same point
        .then(b.hi_open().cmp(&a.hi_open()))
}

/// `b` cannot contain the left end of `a` or anything to its right.
fn ends_before(b: &Interval, a: &Interval) -> bool {
    match b.hi().cmp(a.lo()) {
        Ordering::Less => true,
        Ordering::Equal => b.hi_open() || a.lo_open(),
        Ordering::Greater => false,
    }
}

impl From<Interval> for RSet {
    fn from(iv: Interval) -> Self {
        RSet {
            components: vec![iv],
        }
    }
}

impl FromIterator<Interval> for RSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        RSet::normalize(iter)
    }
}

impl fmt::Display for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("∅");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for RSet {
    type Err = SetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "{}" {
            return Ok(RSet::empty());
        }
        s.split(';')
            .map(|part| part.parse::<Interval>())
            .collect::<Result<Vec<_>, _>>()
            .map(RSet::normalize)
    }
}

impl Serialize for RSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
