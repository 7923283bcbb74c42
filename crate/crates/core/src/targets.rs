//! Target subspaces: the whole ambient, closed sets, the middle-thirds
//! Cantor set, countable sets given by an enumeration, and dense G_δ sets
//! given by a sequence of deleted points.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::sets::{pow3_neg, Interval, RSet, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TargetError {
    #[error("unknown enumeration {0:?}; known: farey, dyadic, triadic")]
    UnknownEnumeration(String),
    #[error("cannot parse target {0:?}; expected full, cantor, countable:<enum>, gdelta:<enum> or rset:<set>")]
    Parse(String),
    #[error("target {0} is not a nonempty closed subset of the ambient")]
    NotInAmbient(String),
}

/// Injective enumerations of rationals in `[0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Enumeration {
    /// All rationals in `[0,1]`: 0, 1, then reduced `p/q` by increasing `q`.
    Farey,
    /// Dyadic rationals in `(0,1)`: 1/2, 1/4, 3/4, 1/8, ...
    Dyadic,
    /// Triadic rationals in `(0,1)`: 1/3, 2/3, 1/9, 2/9, 4/9, ...; never 1/2.
    Triadic,
}

impl Enumeration {
    pub const ALL: [Enumeration; 3] = [Enumeration::Farey, Enumeration::Dyadic, Enumeration::Triadic];

    /// The `k`-th point in `[0,1]`.
    pub fn nth_unit(self, k: usize) -> Rational {
        match self {
            Enumeration::Farey => farey_nth(k),
            Enumeration::Dyadic => prime_power_nth(2, k),
            Enumeration::Triadic => prime_power_nth(3, k),
        }
    }

    /// The `k`-th point mapped affinely onto `ambient`.
    pub fn nth(self, k: usize, ambient: &Interval) -> Rational {
        ambient.lo() + self.nth_unit(k) * ambient.length()
    }

    pub fn first(self, n: usize, ambient: &Interval) -> Vec<Rational> {
        let mut out = Vec::with_capacity(n);
        match self {
            Enumeration::Farey => {
                let mut it = FareyIter::default();
                for _ in 0..n {
                    out.push(ambient.lo() + it.next().unwrap() * ambient.length());
                }
            }
            _ => out.extend((0..n).map(|k| self.nth(k, ambient))),
        }
        out
    }

    /// Whether `x` (in unit coordinates) is enumerated.
    pub fn contains_unit(self, x: &Rational) -> bool {
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        match self {
            Enumeration::Farey => x >= &zero && x <= &one,
            Enumeration::Dyadic => x > &zero && x < &one && is_power_of(x.denom(), 2),
            Enumeration::Triadic => x > &zero && x < &one && is_power_of(x.denom(), 3),
        }
    }

    /// Whether `x` is the image of an enumerated point on `ambient`.
    pub fn contains(self, x: &Rational, ambient: &Interval) -> bool {
        self.contains_unit(&((x - ambient.lo()) / ambient.length()))
    }

    /// Some enumerated point strictly between `lo < hi`, both in `ambient`.
    pub fn point_between(self, lo: &Rational, hi: &Rational, ambient: &Interval) -> Option<Rational> {
        if lo >= hi {
            return None;
        }
        let len = ambient.length();
        let (a, b) = ((lo - ambient.lo()) / &len, (hi - ambient.lo()) / &len);
        let unit = match self {
            Enumeration::Farey => (&a + &b) / Rational::from_integer(2.into()),
            Enumeration::Dyadic | Enumeration::Triadic => {
                let base = BigInt::from(if self == Enumeration::Dyadic { 2 } else { 3 });
                let mut den = base.clone();
                loop {
                    let mut p: BigInt = (&a * Rational::from_integer(den.clone())).floor().to_integer() + 1;
                    if p.is_multiple_of(&base) {
                        p += 1;
                    }
                    let x = Rational::new(p, den.clone());
                    if x < b {
                        break x;
                    }
                    den *= &base;
                }
            }
        };
        self.contains_unit(&unit).then(|| ambient.lo() + unit * len)
    }

    pub fn id(self) -> &'static str {
        match self {
            Enumeration::Farey => "farey",
            Enumeration::Dyadic => "dyadic",
            Enumeration::Triadic => "triadic",
        }
    }
}

impl fmt::Display for Enumeration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Enumeration {
    type Err = TargetError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Enumeration::ALL
            .into_iter()
            .find(|e| e.id() == s.trim())
            .ok_or_else(|| TargetError::UnknownEnumeration(s.to_string()))
    }
}

fn is_power_of(d: &BigInt, base: u32) -> bool {
    let b = BigInt::from(base);
    let mut d = d.clone();
    if d <= BigInt::from(1) {
        return false;
    }
    while d.is_multiple_of(&b) {
        d /= &b;
    }
    d == BigInt::from(1)
}

#[derive(Default)]
struct FareyIter {
    q: u64,
    p: u64,
}

impl Iterator for FareyIter {
    type Item = Rational;
    fn next(&mut self) -> Option<Rational> {
        // q = 0 encodes the two leading points 0 and 1
        if self.q == 0 {
            self.p += 1;
            if self.p == 1 {
                return Some(Rational::from_integer(0.into()));
            }
            self.q = 2;
            self.p = 0;
            return Some(Rational::from_integer(1.into()));
        }
        loop {
            self.p += 1;
            if self.p >= self.q {
                self.q += 1;
                self.p = 1;
            }
            if self.p.gcd(&self.q) == 1 {
                return Some(Rational::new(self.p.into(), self.q.into()));
            }
        }
    }
}

fn farey_nth(k: usize) -> Rational {
    FareyIter::default().nth(k).expect("infinite")
}

/// Points `p / base^j` with `p` coprime to `base`, by increasing `j`.
fn prime_power_nth(base: u64, mut k: usize) -> Rational {
    let mut j = 1u32;
    loop {
        let den = BigInt::from(base).pow(j);
        let level = den.clone() - den.clone() / base;
        let level_len: usize = level.clone().try_into().unwrap_or(usize::MAX);
        if k < level_len {
            // the k-th residue in 1..den that is coprime to base
            let blocks = k as u64 / (base - 1);
            let within = k as u64 % (base - 1);
            let p = BigInt::from(blocks * base + within + 1);
            return Rational::new(p, den);
        }
        k -= level_len;
        j += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorSpec {
    ambient: Interval,
}

impl CantorSpec {
    pub fn new(ambient: Interval) -> Option<Self> {
        (!ambient.is_point() && ambient.is_closed()).then_some(CantorSpec { ambient })
    }

    pub fn ambient(&self) -> &Interval {
        &self.ambient
    }

    /// The `2^n` closed pieces of level `n`, left to right.
    pub fn level(&self, n: u32) -> Vec<Interval> {
        let mut pieces = vec![self.ambient.clone()];
        for _ in 0..n {
            pieces = pieces.iter().flat_map(|p| Self::children(p)).collect();
        }
        pieces
    }

    pub fn children(piece: &Interval) -> [Interval; 2] {
        let third = piece.length() / Rational::from_integer(3.into());
        let left = Interval::closed(piece.lo().clone(), piece.lo() + &third).expect("positive");
        let right = Interval::closed(piece.hi() - &third, piece.hi().clone()).expect("positive");
        [left, right]
    }

    pub fn piece_length(&self, n: u32) -> Rational {
        pow3_neg(n) * self.ambient.length()
    }

    pub fn level_set(&self, n: u32) -> RSet {
        RSet::normalize(self.level(n))
    }

    /// Exact membership of a rational in the Cantor set: follow the ternary
    /// shift, which on `p/q` visits finitely many states.
    pub fn contains(&self, x: &Rational) -> bool {
        if !self.ambient.contains(x) {
            return false;
        }
        let one = Rational::from_integer(1.into());
        let three = Rational::from_integer(3.into());
        let third = &one / &three;
        let two_thirds = &third + &third;
        let mut t = (x - self.ambient.lo()) / self.ambient.length();
        let mut seen = std::collections::HashSet::new();
        while seen.insert(t.clone()) {
            if t <= third {
                t = &t * &three;
            } else if t >= two_thirds {
                t = &t * &three - &three + &one;
            } else {
                return false;
            }
        }
        true
    }

    /// Whether the set `u`, open in the ambient, contains the Cantor set.
    /// A miss comes with a Cantor point outside `u`.
    pub fn covered_by(&self, u: &RSet) -> CantorCoverage {
        let rest = RSet::from(self.ambient.clone()).subtract(u);
        for gap in rest.components() {
            if let Some(p) = self.point_in(gap) {
                return CantorCoverage::Missed(p);
            }
        }
        CantorCoverage::Covered
    }

    /// A Cantor point of `gap`, if any. Terminates: when neither end is a
    /// Cantor point both ends are at positive distance from the set.
    fn point_in(&self, gap: &Interval) -> Option<Rational> {
        for end in [gap.lo(), gap.hi()] {
            if gap.contains(end) && self.contains(end) {
                return Some(end.clone());
            }
        }
        let mut stack = vec![self.ambient.clone()];
        while let Some(piece) = stack.pop() {
            let Some(meet) = piece.intersect(gap) else {
                continue;
            };
            if meet == piece {
                return Some(piece.lo().clone());
            }
            let [l, r] = Self::children(&piece);
            stack.push(r);
            stack.push(l);
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CantorCoverage {
    Covered,
    Missed(Rational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountableTargetSpec {
    pub enumeration: Enumeration,
}

/// Dense open sets `G_n = ambient ∖ {q_n}`; the target is their intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GDeltaSpec {
    pub deleted: Enumeration,
}

impl GDeltaSpec {
    pub fn dense_open(&self, n: usize, ambient: &Interval) -> RSet {
        let q = self.deleted.nth(n, ambient);
        RSet::from(ambient.clone()).subtract(&RSet::from(Interval::point(q)))
    }
}

/// The subspace `Y` whose covers ONE plays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetSpec {
    Full,
    ClosedSet(RSet),
    Cantor,
    Countable(CountableTargetSpec),
    GDelta(GDeltaSpec),
}

impl TargetSpec {
    /// The closed set ONE's covers must cover. Countable and G_δ targets
    /// use the ambient: a finite cover by rational intervals of a dense
    /// set of rationals covers its closure.
    pub fn cover_target(&self, ambient: &Interval) -> RSet {
        match self {
            TargetSpec::ClosedSet(s) => s.clone(),
            _ => RSet::from(ambient.clone()),
        }
    }

    pub fn validate(&self, ambient: &Interval) -> Result<(), TargetError> {
        if let TargetSpec::ClosedSet(s) = self {
            if s.is_empty() || !s.is_closed() || !s.is_subset(&RSet::from(ambient.clone())) {
                return Err(TargetError::NotInAmbient(s.to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSpec::Full => f.write_str("full"),
            TargetSpec::ClosedSet(s) => write!(f, "rset:{s}"),
            TargetSpec::Cantor => f.write_str("cantor"),
            TargetSpec::Countable(c) => write!(f, "countable:{}", c.enumeration),
            TargetSpec::GDelta(g) => write!(f, "gdelta:{}", g.deleted),
        }
    }
}

impl FromStr for TargetSpec {
    type Err = TargetError;
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s = input.trim();
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        match (kind, arg) {
            ("full", None) => Ok(TargetSpec::Full),
            ("cantor", None) => Ok(TargetSpec::Cantor),
            ("countable", a) => Ok(TargetSpec::Countable(CountableTargetSpec {
                enumeration: a.unwrap_or("farey").parse()?,
            })),
            ("gdelta", a) => Ok(TargetSpec::GDelta(GDeltaSpec {
                deleted: a.unwrap_or("farey").parse()?,
            })),
            ("rset", Some(a)) => a
                .parse::<RSet>()
                .map(TargetSpec::ClosedSet)
                .map_err(|_| TargetError::Parse(input.to_string())),
            _ => Err(TargetError::Parse(input.to_string())),
        }
    }
}

impl Serialize for Enumeration {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl Serialize for TargetSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TargetSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
