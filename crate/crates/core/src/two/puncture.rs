//! The two-inning disjoint-refinement win on an interval: cut the chain
//! subcover at finitely many points, then cover those points.

use crate::covers::{chain_subcover, Cover, CoverError};
use crate::sets::{abs_diff, is_discrete, DiscreteFamily, Interval, RSet, Rational};
use crate::strategy::{Arena, InningInfo, StrategyError, TwoStrategy};

use super::countable::around_point;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Punctured {
    pub family: Vec<RSet>,
    pub punctures: Vec<Rational>,
}

/// `[a,p_1), (p_1,p_2), ..., (p_{k-1},b]` where `p_i` is the midpoint of the
/// overlap of consecutive chain members. Pairwise disjoint, but the closures
/// of neighbours share `p_i`.
pub fn chain_puncture_refinement(cover: &Cover) -> Result<Punctured, CoverError> {
    let target = cover.target_interval()?.clone();
    let t = RSet::from(target.clone());
    // members may be unions of intervals; their traced components cover too
    let pieces: Vec<RSet> = cover
        .members()
        .iter()
        .flat_map(|m| m.intersect(&t).components().to_vec())
        .map(RSet::from)
        .collect();
    let pieces = Cover::new(t.clone(), pieces)?;
    let chain = chain_subcover(&pieces)?;
    let trace = |i: usize| pieces.members()[chain[i]].clone();
    let mut punctures = Vec::with_capacity(chain.len().saturating_sub(1));
    for i in 0..chain.len().saturating_sub(1) {
        let overlap = trace(i).intersect(&trace(i + 1));
        let hull = overlap.hull().ok_or(CoverError::NoLebesgueNumber)?;
        punctures.push(hull.midpoint());
    }
    let mut family = Vec::with_capacity(chain.len());
    let mut lo = (target.lo().clone(), false);
    for p in &punctures {
        family.push(RSet::from(Interval::new(lo.0.clone(), p.clone(), lo.1, true).expect("punctures increase")));
        lo = (p.clone(), true);
    }
    family.push(RSet::from(Interval::new(lo.0, target.hi().clone(), lo.1, false).expect("punctures increase")));
    Ok(Punctured { family, punctures })
}

/// One small interval per puncture, inside a member of `cover`: half the
/// distance to the member's open ends, capped at a quarter of the spacing
/// between punctures so the closures stay apart.
pub fn puncture_cleanup(punctures: &[Rational], cover: &Cover, space: &RSet) -> Result<DiscreteFamily, CoverError> {
    let mut members = Vec::with_capacity(punctures.len());
    for (i, p) in punctures.iter().enumerate() {
        let spacing = punctures
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| abs_diff(q, p))
            .min();
        let cap = spacing.map(|s| s / Rational::from_integer(4.into()));
        members.push(around_point(p, cover, space, cap.as_ref())?);
    }
    Ok(is_discrete(&members).expect("quarter spacing keeps closures apart"))
}

/// `two:chain-puncture`.
pub struct ChainPunctureTwo {
    space: RSet,
    punctures: Option<Vec<Rational>>,
    cleaned: bool,
}

impl ChainPunctureTwo {
    pub fn new(arena: &Arena) -> Self {
        ChainPunctureTwo {
            space: arena.space.clone(),
            punctures: None,
            cleaned: false,
        }
    }
}

impl TwoStrategy for ChainPunctureTwo {
    fn respond(&mut self, _info: &InningInfo, cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        match &self.punctures {
            None => {
                let space_cover = cover.retarget(self.space.clone())?;
                let p = chain_puncture_refinement(&space_cover)?;
                self.punctures = Some(p.punctures);
                Ok(p.family)
            }
            Some(_) if self.cleaned => Ok(Vec::new()),
            Some(points) => {
                self.cleaned = true;
                Ok(puncture_cleanup(points, cover, &self.space)?.into_members())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{int, is_disjoint, rat};

    fn unit() -> Interval {
        Interval::closed(int(0), int(1)).unwrap()
    }

    fn cover(target: Interval, members: &[&str]) -> Cover {
        Cover::over_interval(target, members.iter().map(|m| m.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn puncture_example() {
        let p = chain_puncture_refinement(&cover(unit(), &["(-1/8,1/2)", "(1/4,9/8)"])).unwrap();
        assert_eq!(p.punctures, vec![rat(3, 8)]);
        let shown: Vec<String> = p.family.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["[0,3/8)", "(3/8,1]"]);
        assert!(is_disjoint(&p.family).is_ok());
        assert!(is_discrete(&p.family).is_err());
        let union = RSet::union_all(&p.family).union(&RSet::from(Interval::point(rat(3, 8))));
        assert_eq!(union, RSet::from(unit()));

        let split = chain_puncture_refinement(&cover(unit(), &["[0,1/4);(1/2,1]", "(1/8,5/8)"])).unwrap();
        assert_eq!(split.punctures, vec![rat(3, 16), rat(9, 16)]);

        let single = chain_puncture_refinement(&cover(unit(), &["(-1,2)"])).unwrap();
        assert!(single.punctures.is_empty());
        assert_eq!(single.family[0].to_string(), "[0,1]");
    }

    #[test]
    fn cleanup_examples() {
        let t: Interval = "[1/4,1/2]".parse().unwrap();
        let space = RSet::from(unit());
        let fam = puncture_cleanup(&[rat(3, 8)], &cover(t, &["(0,1)"]), &space).unwrap();
        assert_eq!(fam.members()[0].to_string(), "(3/16,9/16)");
        assert!(puncture_cleanup(&[], &cover(unit(), &["(-1,2)"]), &space).unwrap().is_empty());
        let fam = puncture_cleanup(&[rat(1, 4), rat(3, 4)], &cover(unit(), &["(-1,2)"]), &space).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.members()[0].to_string(), "(1/8,3/8)");
        assert_eq!(fam.min_gap(), Some(&rat(1, 4)));
    }
}
