//! Seeded random covers and the invariant suites run by `screengame check`
//! and the acceptance tests. Every suite is deterministic in its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analyzer::{dense_discrete_witness, DenseWitness};
use crate::covers::{lebesgue_number, verify_lebesgue, Cover};
use crate::one::AvoidFixedOne;
use crate::ordinal::OrdinalCNF;
use crate::sets::{closure_union, is_discrete, is_disjoint, pow3_neg, refines, DiscreteFamily, Interval, RSet, Rational};
use crate::strategy::{Arena, InningInfo, OneStrategy};
use crate::targets::{CantorSpec, TargetSpec};
use crate::two::{cantor_one_shot, halving_refinement, TwoId};

/// Random rational intervals and open covers.
pub struct CoverGen {
    rng: ChaCha8Rng,
}

impl CoverGen {
    pub fn new(seed: u64) -> Self {
        CoverGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn grid_point(&mut self, den: i64) -> Rational {
        Rational::new(self.rng.random_range(0..=den).into(), den.into())
    }

    /// A closed subinterval of `[0,1]` of positive length.
    pub fn subinterval(&mut self) -> Interval {
        let den = [4, 8, 12, 16, 27, 60][self.rng.random_range(0..6)];
        loop {
            let (x, y) = (self.grid_point(den), self.grid_point(den));
            if x != y {
                let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                return Interval::closed(lo, hi).expect("lo < hi");
            }
        }
    }

    /// An open cover of `target`: a chain of overlapping open intervals
    /// with random overhangs, some pairs merged into two-piece members,
    /// plus a few random extra members.
    pub fn open_cover(&mut self, target: &Interval) -> Cover {
        let len = target.length();
        let k = self.rng.random_range(1..=7usize);
        let mut cuts: Vec<Rational> = (0..k - 1)
            .map(|_| target.lo() + &len * Rational::new(self.rng.random_range(1..64).into(), 64.into()))
            .collect();
        cuts.sort();
        cuts.dedup();
        let mut ends = vec![target.lo().clone()];
        ends.extend(cuts);
        ends.push(target.hi().clone());
        let mut members: Vec<RSet> = ends
            .windows(2)
            .map(|w| {
                let l = &len * Rational::new(self.rng.random_range(1..=16).into(), 256.into());
                let r = &len * Rational::new(self.rng.random_range(1..=16).into(), 256.into());
                RSet::from(Interval::open(&w[0] - l, &w[1] + r).expect("overhangs are positive"))
            })
            .collect();
        if members.len() >= 3 && self.rng.random_bool(0.4) {
            let i = self.rng.random_range(0..members.len() - 2);
            let far = members.remove(i + 2);
            members[i] = members[i].union(&far);
        }
        for _ in 0..self.rng.random_range(0..3) {
            let c = target.lo() + &len * Rational::new(self.rng.random_range(0..=64).into(), 64.into());
            let r = &len * Rational::new(self.rng.random_range(1..=12).into(), 64.into());
            members.push(RSet::from(Interval::open(&c - &r, &c + &r).expect("r > 0")));
        }
        Cover::over_interval(target.clone(), members).expect("chain covers the target")
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.rng.random_range(0..xs.len())]
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn new(name: &'static str, seed: u64) -> Self {
        SuiteResult {
            name,
            seed,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(describe());
        }
    }
}

/// The halving refinement is discrete, refines the cover, stays inside the
/// piece and leaves exactly half of it.
pub fn suite_halving(seed: u64, n: usize) -> SuiteResult {
    let mut out = SuiteResult::new("halving", seed);
    let mut g = CoverGen::new(seed);
    for i in 0..n {
        let piece = g.subinterval();
        let cover = g.open_cover(&piece);
        let ok = match halving_refinement(&cover, &piece) {
            Ok(h) => {
                let members = h.family.members();
                let whole = RSet::from(piece.clone());
                let residual = RSet::normalize(h.residual.clone());
                is_discrete(members).is_ok()
                    && refines(members, cover.members()).holds()
                    && h.family.union().is_subset(&whole)
                    && residual.measure() * Rational::from_integer(2.into()) == piece.length()
                    && residual.union(&h.family.union()) == whole
            }
            Err(_) => false,
        };
        out.case(ok, || format!("case {i}: piece {piece}, cover {:?}", display(cover.members())));
    }
    out
}

/// `lebesgue_number(cover)` passes `verify_lebesgue`.
pub fn suite_lebesgue(seed: u64, n: usize) -> SuiteResult {
    let mut out = SuiteResult::new("lebesgue", seed);
    let mut g = CoverGen::new(seed);
    for i in 0..n {
        let piece = g.subinterval();
        let cover = g.open_cover(&piece);
        let ok = lebesgue_number(&cover)
            .and_then(|d| verify_lebesgue(&cover, &d))
            .is_ok_and(|r| r.is_ok());
        out.case(ok, || format!("case {i}: cover {:?} of {piece}", display(cover.members())));
    }
    out
}

/// The one-shot Cantor family covers every level-`n` piece, refines the
/// cover with witnesses, and keeps its closures `3^-(n+1)·L` apart.
pub fn suite_cantor(seed: u64, n: usize) -> SuiteResult {
    let mut out = SuiteResult::new("cantor", seed);
    let mut g = CoverGen::new(seed);
    for i in 0..n {
        let ambient = if g.coin(0.5) {
            crate::engine::unit_interval()
        } else {
            g.subinterval()
        };
        let cover = g.open_cover(&ambient);
        let spec = CantorSpec::new(ambient.clone()).expect("positive length");
        let ok = match cantor_one_shot(&cover, &spec, &RSet::from(ambient.clone())) {
            Ok(shot) => {
                let members = shot.family.members();
                let bound = pow3_neg(shot.level + 1) * ambient.length();
                spec.level_set(shot.level).is_subset(&shot.family.union())
                    && refines(members, cover.members()).holds()
                    && shot.family.min_gap().is_none_or(|g| g >= &bound)
            }
            Err(_) => false,
        };
        out.case(ok, || format!("case {i}: cover {:?} of {ambient}", display(cover.members())));
    }
    out
}

/// One-shot families against `one:avoid-fixed`, from every catalog TWO
/// bot and random subfamilies of them, on random intervals: each misses a
/// rational that `dense_discrete_witness` finds.
pub fn dense_witness_families(seed: u64, n: usize) -> Vec<(Interval, DiscreteFamily)> {
    let mut g = CoverGen::new(seed);
    let bots = TwoId::catalog();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let space = if out.len() < bots.len() {
            crate::engine::unit_interval()
        } else {
            g.subinterval()
        };
        let arena = Arena::interval(space.clone(), TargetSpec::Full);
        let info = InningInfo::new(OrdinalCNF::zero(), 0);
        let Ok(mut one) = AvoidFixedOne::new(&arena) else { continue };
        let members = one.cover(&info).expect("fixed cover");
        let cover = Cover::over_interval(space.clone(), members).expect("avoid cover covers");
        let bot = bots[out.len() % bots.len()];
        let mut two = bot.build(&arena).expect("catalog bots build on intervals");
        let mut family = two.respond(&info, &cover).expect("catalog bots answer covers");
        if out.len() >= bots.len() && family.len() > 1 && g.coin(0.5) {
            family.retain(|_| g.coin(0.6));
        }
        let family = is_discrete(&family).expect("catalog bots play discrete families");
        out.push((space, family));
    }
    out
}

pub fn suite_dense_witness(seed: u64, n: usize) -> SuiteResult {
    let mut out = SuiteResult::new("dense-witness", seed);
    for (i, (space, family)) in dense_witness_families(seed, n).into_iter().enumerate() {
        let ok = match dense_discrete_witness(&family, &space) {
            Ok(w) => {
                let p = w.point();
                let gap_ok = match &w {
                    DenseWitness::Gap { interval } => RSet::from(interval.clone())
                        .intersect(&closure_union(family.members()))
                        .is_empty(),
                    DenseWitness::Point { .. } => true,
                };
                space.contains(&p) && !family.union().contains_point(&p) && gap_ok
            }
            Err(_) => false,
        };
        out.case(ok, || format!("case {i}: family {:?} on {space}", display(family.members())));
    }
    out
}

/// The discreteness and disjointness checks agree with pairwise tests, and
/// every discrete family is disjoint.
pub fn suite_families(seed: u64, n: usize) -> SuiteResult {
    let mut out = SuiteResult::new("families", seed);
    let mut g = CoverGen::new(seed);
    for i in 0..n {
        let space = g.subinterval();
        let family: Vec<RSet> = g.open_cover(&space).members().iter().filter(|_| g.coin(0.5)).cloned().collect();
        let pair = |f: &dyn Fn(&RSet, &RSet) -> bool| {
            (0..family.len()).all(|a| (a + 1..family.len()).all(|b| f(&family[a], &family[b])))
        };
        let d = is_discrete(&family).is_ok();
        let c = is_disjoint(&family).is_ok();
        let ok = d == pair(&|x, y| x.closure().intersect(&y.closure()).is_empty())
            && c == pair(&|x, y| x.intersect(y).is_empty())
            && (!d || c);
        out.case(ok, || format!("case {i}: {:?}", display(&family)));
    }
    out
}

pub fn all_suites(seed: u64, scale: usize) -> Vec<SuiteResult> {
    vec![
        suite_halving(seed, 500 * scale),
        suite_lebesgue(seed, 500 * scale),
        suite_cantor(seed, 100 * scale),
        suite_dense_witness(seed, 200 * scale),
        suite_families(seed, 500 * scale),
    ]
}

fn display(xs: &[RSet]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic_and_valid() {
        let a: Vec<String> = (0..5).map(|_| CoverGen::new(7).subinterval().to_string()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut g = CoverGen::new(11);
        for _ in 0..50 {
            let t = g.subinterval();
            let c = g.open_cover(&t);
            assert!(c.members().iter().all(|m| m.is_open()));
        }
    }

    #[test]
    fn small_suites_pass() {
        for s in all_suites(3, 0).into_iter().chain([suite_halving(5, 40), suite_cantor(5, 10)]) {
            assert!(s.passed(), "{}: {:?}", s.name, s.failures);
        }
    }
}
