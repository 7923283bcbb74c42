//! Covers of compact targets, exact Lebesgue numbers, the dyadic ball
//! covers, and chain subcovers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sets::{fmt_rational, half, int, pow2_neg, Interval, RSet, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("cover member {0} is empty")]
    EmptyMember(usize),
    #[error("cover target must be a nonempty closed set")]
    BadTarget,
    #[error("target must be a single closed interval of positive length")]
    TargetNotInterval,
    #[error("members do not cover the target: {} is uncovered", fmt_rational(.0))]
    NotCovering(Rational),
    #[error("cover has no positive Lebesgue number over the target")]
    NoLebesgueNumber,
    #[error("member {0} meets the target in more than one component")]
    MemberNotInterval(usize),
}

/// A finite cover of a closed target by nonempty sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoverRepr", into = "CoverRepr")]
pub struct Cover {
    target: RSet,
    members: Vec<RSet>,
}

#[derive(Serialize, Deserialize)]
struct CoverRepr {
    target: RSet,
    members: Vec<RSet>,
}

impl TryFrom<CoverRepr> for Cover {
    type Error = CoverError;
    fn try_from(r: CoverRepr) -> Result<Self, CoverError> {
        Cover::new(r.target, r.members)
    }
}

impl From<Cover> for CoverRepr {
    fn from(c: Cover) -> Self {
        CoverRepr {
            target: c.target,
            members: c.members,
        }
    }
}

impl Cover {
    pub fn new(target: RSet, members: Vec<RSet>) -> Result<Self, CoverError> {
        if target.is_empty() || !target.is_closed() {
            return Err(CoverError::BadTarget);
        }
        if let Some(i) = members.iter().position(RSet::is_empty) {
            return Err(CoverError::EmptyMember(i));
        }
        let uncovered = target.subtract(&RSet::union_all(&members));
        if let Some(x) = uncovered.sample_point() {
            return Err(CoverError::NotCovering(x));
        }
        Ok(Cover { target, members })
    }

    pub fn over_interval(target: Interval, members: Vec<RSet>) -> Result<Self, CoverError> {
        Cover::new(RSet::from(target), members)
    }

    pub fn target(&self) -> &RSet {
        &self.target
    }

    pub fn members(&self) -> &[RSet] {
        &self.members
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

    /// The target as a single closed interval of positive length.
    pub fn target_interval(&self) -> Result<&Interval, CoverError> {
        match self.target.as_interval() {
            Some(iv) if !iv.is_point() => Ok(iv),
            _ => Err(CoverError::TargetNotInterval),
        }
    }

    /// Same members viewed as a cover of a smaller closed target.
    pub fn retarget(&self, target: RSet) -> Result<Cover, CoverError> {
        Cover::new(target, self.members.clone())
    }

    /// Intersect every member with `space`, dropping members that vanish.
    pub fn restricted_to(&self, space: &RSet) -> Result<Cover, CoverError> {
        let members = self
            .members
            .iter()
            .map(|m| m.intersect(space))
            .filter(|m| !m.is_empty())
            .collect();
        Cover::new(self.target.intersect(space), members)
    }

    /// First member containing the closed interval `piece`.
    pub fn member_containing(&self, piece: &Interval) -> Option<usize> {
        let p = RSet::from(piece.clone());
        self.members.iter().position(|m| p.is_subset(m))
    }

    pub fn member_containing_point(&self, x: &Rational) -> Option<usize> {
        self.members.iter().position(|m| m.contains_point(x))
    }
}

/// Supremum of window lengths `d <= b - a` for which every closed window
/// `[x, x + d]` inside `[a, b]` lies in a single member.
///
/// Validity is monotone in `d`, so the supremum is the tightest of three
/// kinds of constraint: the target length; the reach of members covering
/// `a`; and, for each component ending at some `r < b`, the longest
/// window that can straddle `r`.
pub fn lebesgue_sup(members: &[RSet], target: &Interval) -> Result<Rational, CoverError> {
    let (a, b) = (target.lo(), target.hi());
    let length = target.length();
    if !length.is_positive() {
        return Err(CoverError::TargetNotInterval);
    }
    // members are open, but a component ending exactly at `a` or `b` may
    // still miss that endpoint
    let reaches_a = |c: &Interval| c.lo() < a || (c.lo() == a && !c.lo_open());
    let reaches_b = |c: &Interval| c.hi() > b || (c.hi() == b && !c.hi_open());
    let comps: Vec<&Interval> = members
        .iter()
        .flat_map(|m| m.components())
        .filter(|c| c.lo() < b && c.hi() > a)
        .collect();

    let mut best = length;
    let from_a = comps
        .iter()
        .filter(|c| reaches_a(c))
        .map(|c| c.hi().min(b) - a)
        .max()
        .ok_or_else(|| CoverError::NotCovering(a.clone()))?;
    best = best.min(from_a);

    // right ends in descending order, carrying the least left end of every
    // component that ends strictly further right
    let mut min_lo_beyond: Option<&Rational> = comps.iter().filter(|c| reaches_b(c)).map(|c| c.lo()).min();
    if min_lo_beyond.is_none() {
        return Err(CoverError::NotCovering(b.clone()));
    }
    let mut ending: Vec<&Interval> = comps.iter().copied().filter(|c| !reaches_b(c)).collect();
    ending.sort_by(|x, y| y.hi().cmp(x.hi()));
    let mut i = 0;
    while i < ending.len() {
        let r = ending[i].hi();
        let mut j = i;
        while j < ending.len() && ending[j].hi() == r {
            j += 1;
        }
        let straddle = r - min_lo_beyond.expect("set above");
        if straddle < r - a {
            best = best.min(straddle);
        }
        for c in &ending[i..j] {
            if min_lo_beyond.is_none_or(|m| c.lo() < m) {
                min_lo_beyond = Some(c.lo());
            }
        }
        i = j;
    }
    if best.is_positive() {
        Ok(best)
    } else {
        Err(CoverError::NoLebesgueNumber)
    }
}

/// Half the supremum of valid window lengths; always passes [`verify_lebesgue`].
pub fn lebesgue_number(cover: &Cover) -> Result<Rational, CoverError> {
    lebesgue_number_on(cover.members(), cover.target_interval()?)
}

pub fn lebesgue_number_on(members: &[RSet], target: &Interval) -> Result<Rational, CoverError> {
    lebesgue_sup(members, target).map(|d| half(&d))
}

/// Smallest Lebesgue number over the positive-length components of a closed target.
pub fn lebesgue_number_on_set(members: &[RSet], target: &RSet) -> Result<Option<Rational>, CoverError> {
    let mut best: Option<Rational> = None;
    for c in target.components().iter().filter(|c| !c.is_point()) {
        let d = lebesgue_number_on(members, c)?;
        if best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
    }
    Ok(best)
}

/// Checks that every closed window of length `delta` (capped at the target
/// length) inside the target lies in one member; on failure returns a
/// window that does not.
pub fn verify_lebesgue(cover: &Cover, delta: &Rational) -> Result<Result<(), Interval>, CoverError> {
    Ok(verify_lebesgue_on(cover.members(), cover.target_interval()?, delta))
}

pub fn verify_lebesgue_on(members: &[RSet], target: &Interval, delta: &Rational) -> Result<(), Interval> {
    let width = delta.clone().min(target.length());
    let starts = Interval::closed(target.lo().clone(), target.hi() - &width)
        .expect("width never exceeds the target length");
    // window [x, x + width] fits in (l, r) iff x lies in the shrunken (l, r - width)
    let shrunk = RSet::normalize(members.iter().flat_map(|m| m.components()).filter_map(|c| {
        Interval::new(c.lo().clone(), c.hi() - &width, c.lo_open(), c.hi_open()).ok()
    }));
    let bad = RSet::from(starts).subtract(&shrunk);
    match bad.sample_point() {
        None => Ok(()),
        Some(x) => {
            let end = &x + &width;
            Err(Interval::closed(x, end).expect("nonnegative width"))
        }
    }
}

/// Index of a ball cover: members have diameter `2^-(n+1) < 2^-n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallCoverIndex(u32);

impl BallCoverIndex {
    pub fn new(n: u32) -> Option<Self> {
        (n >= 1).then_some(BallCoverIndex(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Grid step `h = 2^-(n+2)`.
    pub fn step(self) -> Rational {
        pow2_neg(self.0 + 2)
    }
}

/// The overlapping dyadic grid cover of `[0,1]`.
pub fn ball_cover(n: BallCoverIndex) -> Cover {
    ball_cover_on(n, &Interval::closed(int(0), int(1)).unwrap())
}

/// Intervals `((k-1)h, (k+1)h) ∩ ambient` for every `k` whose ball meets the ambient.
pub fn ball_cover_on(n: BallCoverIndex, ambient: &Interval) -> Cover {
    let h = n.step();
    let amb = RSet::from(ambient.clone());
    let k_lo = floor(&(ambient.lo() / &h));
    let k_hi = ceil(&(ambient.hi() / &h));
    let mut members = Vec::new();
    let mut k = k_lo;
    while k <= k_hi {
        let c = Rational::from_integer(k.clone()) * &h;
        let ball = Interval::open(&c - &h, &c + &h).expect("h > 0");
        let m = RSet::from(ball).intersect(&amb);
        if !m.is_empty() {
            members.push(m);
        }
        k += 1;
    }
    Cover::new(amb, members).expect("grid balls cover the ambient")
}

fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

fn ceil(x: &Rational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// A left-to-right chain of member indices covering the target interval:
/// greedy maximal reach, then pruning of members made redundant by their
/// neighbours. Consecutive members overlap; others are disjoint.
pub fn chain_subcover(cover: &Cover) -> Result<Vec<usize>, CoverError> {
    let target = cover.target_interval()?;
    let t = RSet::from(target.clone());
    let pieces: Vec<Option<Interval>> = cover
        .members()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let r = m.intersect(&t);
            match r.components() {
                [] => Ok(None),
                [one] => Ok(Some(one.clone())),
                _ => Err(CoverError::MemberNotInterval(i)),
            }
        })
        .collect::<Result<_, _>>()?;

    let mut chain: Vec<usize> = Vec::new();
    let mut frontier = target.lo().clone();
    loop {
        let mut pick: Option<(usize, &Interval)> = None;
        for (i, p) in pieces.iter().enumerate() {
            let Some(p) = p else { continue };
            if !p.contains(&frontier) {
                continue;
            }
            let better = match pick {
                None => true,
                Some((_, q)) => match p.hi().cmp(q.hi()) {
                    Ordering::Greater => true,
                    Ordering::Equal => q.hi_open() && !p.hi_open(),
                    Ordering::Less => false,
                },
            };
            if better {
                pick = Some((i, p));
            }
        }
        let (i, p) = pick.ok_or_else(|| CoverError::NotCovering(frontier.clone()))?;
        chain.push(i);
        if p.contains(target.hi()) {
            break;
        }
        if p.hi() <= &frontier || !p.hi_open() {
            // a relatively open piece ending inside the target is open there
            return Err(CoverError::NoLebesgueNumber);
        }
        frontier = p.hi().clone();
    }

    let piece = |i: usize| RSet::from(pieces[i].clone().expect("chain members meet the target"));
    let mut changed = true;
    while changed && chain.len() > 1 {
        changed = false;
        for k in 0..chain.len() {
            let mut nbrs = RSet::empty();
            if k > 0 {
                nbrs = nbrs.union(&piece(chain[k - 1]));
            }
            if k + 1 < chain.len() {
                nbrs = nbrs.union(&piece(chain[k + 1]));
            }
            if piece(chain[k]).is_subset(&nbrs) {
                chain.remove(k);
                changed = true;
                break;
            }
        }
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::rat;
    use num_traits::Zero;

    fn members(items: &[&str]) -> Vec<RSet> {
        items.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn unit_cover(items: &[&str]) -> Cover {
        Cover::new("[0,1]".parse().unwrap(), members(items)).unwrap()
    }

    /// Independent oracle: the supremum is one of the finitely many
    /// endpoint differences; validity is monotone, so test each candidate
    /// by probing just below it with the exact window check.
    fn sup_by_candidates(cover: &Cover) -> Rational {
        let t = cover.target_interval().unwrap().clone();
        let (a, b) = (t.lo().clone(), t.hi().clone());
        let comps: Vec<Interval> = cover.members().iter().flat_map(|m| m.components().to_vec()).collect();
        let mut cands = vec![&b - &a];
        for c in &comps {
            cands.push(c.hi() - &a);
            cands.push(&b - c.lo());
            for d in &comps {
                cands.push(c.hi() - d.lo());
            }
        }
        cands.retain(|d| d.is_positive() && d <= &(&b - &a));
        cands.sort();
        cands.dedup();
        let mut sup = Rational::zero();
        let mut prev = Rational::zero();
        for c in cands {
            let probe = half(&(&prev + &c));
            if verify_lebesgue_on(cover.members(), &t, &probe).is_ok() {
                sup = c.clone();
            } else {
                break;
            }
            prev = c;
        }
        sup
    }

    #[test]
    fn members_open_at_the_target_ends_do_not_reach_them() {
        let t: Interval = "[1/27,5/9]".parse().unwrap();
        let c = Cover::over_interval(
            t,
            ["(37/3456,5/9)", "(631/1728,155/384)", "(619/1152,1955/3456)", "(41/288,83/288)"]
                .iter()
                .map(|m| m.parse().unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(lebesgue_sup(c.members(), c.target_interval().unwrap()).unwrap(), sup_by_candidates(&c));
        assert_eq!(verify_lebesgue(&c, &lebesgue_number(&c).unwrap()).unwrap(), Ok(()));
        let left = unit_cover(&["(0,9/8)", "(-1/4,1/8)"]);
        assert_eq!(lebesgue_sup(left.members(), left.target_interval().unwrap()).unwrap(), sup_by_candidates(&left));
    }

    #[test]
    fn lebesgue_examples() {
        let c = unit_cover(&["(-1/8,1/2)", "(1/4,9/8)"]);
        assert_eq!(sup_by_candidates(&c), rat(1, 4));
        assert_eq!(lebesgue_sup(c.members(), c.target_interval().unwrap()).unwrap(), rat(1, 4));
        assert_eq!(lebesgue_number(&c).unwrap(), rat(1, 8));

        let whole = unit_cover(&["(-1,2)"]);
        assert_eq!(lebesgue_number(&whole).unwrap(), rat(1, 2));

        let three = unit_cover(&["(-1/8,3/8)", "(1/4,5/8)", "(1/2,9/8)"]);
        let d = lebesgue_number(&three).unwrap();
        assert!(d.is_positive());
        assert_eq!(verify_lebesgue(&three, &d).unwrap(), Ok(()));
        assert_eq!(d, half(&sup_by_candidates(&three)));
    }

    #[test]
    fn verify_lebesgue_examples() {
        let c = unit_cover(&["(-1/8,1/2)", "(1/4,9/8)"]);
        let window = verify_lebesgue(&c, &rat(1, 4)).unwrap().unwrap_err();
        assert_eq!(window.to_string(), "[1/4,1/2]");
        assert_eq!(verify_lebesgue(&c, &rat(1, 8)).unwrap(), Ok(()));
        assert_eq!(verify_lebesgue(&unit_cover(&["(-1,2)"]), &rat(1, 1)).unwrap(), Ok(()));
    }

    #[test]
    fn lebesgue_rejects_non_open_joins() {
        let c = unit_cover(&["[0,1/2]", "(1/2,1]"]);
        assert_eq!(lebesgue_number(&c), Err(CoverError::NoLebesgueNumber));
    }

    #[test]
    fn relatively_open_members_at_the_ambient_ends() {
        let c = unit_cover(&["[0,3/8);(7/16,1]", "[0,9/16);(5/8,1]"]);
        assert_eq!(sup_by_candidates(&c), rat(1, 8));
        assert_eq!(lebesgue_number(&c).unwrap(), rat(1, 16));
    }

    #[test]
    fn ball_covers() {
        for (n, count, diam) in [(1, 9, rat(1, 4)), (2, 17, rat(1, 8))] {
            let c = ball_cover(BallCoverIndex::new(n).unwrap());
            assert_eq!(c.len(), count);
            let interior_diams: Vec<Rational> = c.members()[1..count - 1]
                .iter()
                .map(|m| m.hull().unwrap().length())
                .collect();
            assert!(interior_diams.iter().all(|d| d == &diam));
            assert!(c.members().iter().all(|m| m.hull().unwrap().length() < pow2_neg(n)));
            assert_eq!(c.members()[0].to_string(), format!("[0,{})", fmt_rational(&(diam.clone() / int(2)))));
        }
        assert!(BallCoverIndex::new(0).is_none());
    }

    #[test]
    fn chain_examples() {
        let c = unit_cover(&["(-1/8,1/2)", "(1/4,9/8)", "(1/3,2/3)"]);
        assert_eq!(chain_subcover(&c).unwrap(), vec![0, 1]);
        assert_eq!(chain_subcover(&unit_cover(&["(-1,2)"])).unwrap(), vec![0]);
        let c = unit_cover(&["(-1/8,3/8)", "(1/4,5/8)", "(1/2,9/8)"]);
        assert_eq!(chain_subcover(&c).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn chain_of_ball_cover_has_chain_property() {
        let c = ball_cover(BallCoverIndex::new(2).unwrap());
        let chain = chain_subcover(&c).unwrap();
        let m = |i: usize| &c.members()[chain[i]];
        for i in 0..chain.len() - 1 {
            assert!(!m(i).intersect(m(i + 1)).is_empty());
        }
        for i in 0..chain.len().saturating_sub(2) {
            assert!(m(i).intersect(m(i + 2)).is_empty());
        }
    }

    #[test]
    fn cover_serializes_as_strings() {
        let c = unit_cover(&["(-1/8,1/2)", "(1/4,9/8)"]);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"target":"[0,1]","members":["(-1/8,1/2)","(1/4,9/8)"]}"#);
        let back: Cover = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Cover>(r#"{"target":"[0,1]","members":["(0,1/2)"]}"#).is_err());
    }

    #[test]
    fn not_covering_reports_a_point() {
        let err = Cover::new("[0,1]".parse().unwrap(), members(&["(0,1)"])).unwrap_err();
        assert_eq!(err, CoverError::NotCovering(rat(0, 1)));
    }
}
