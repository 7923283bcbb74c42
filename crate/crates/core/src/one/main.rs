//! ONE's winning strategy in the ω-length discrete game on a space with a
//! Banach–Mazur winning strategy: play a cover that no discrete refinement
//! can use to swallow the current Banach–Mazur position.

use crate::covers::Cover;
use crate::sets::{closure_union, Interval, RSet, Rational};
use crate::strategy::{
    Arena, InningInfo, LimitDigest, NestedCertificate, OneStrategy, Ruleset, StrategyError,
};
use crate::targets::GDeltaSpec;

use super::avoid::avoid_cover;
use super::bm::{bm_one_compact, bm_one_dense_gdelta, bm_one_opening};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BmRule {
    Compact,
    DenseGDelta(GDeltaSpec),
}

/// One inning: `T = O ∖ cl(⋃ family)`, then the next Banach–Mazur move
/// inside `T` and the cover that avoids it.
pub fn one_main_step(
    rule: &BmRule,
    n: usize,
    o: &RSet,
    family: &[RSet],
    arena: &Arena,
) -> Result<MainStep, StrategyError> {
    let core = o.subtract(&closure_union(family));
    if core.is_empty() {
        return Err(StrategyError::Invariant(format!(
            "TWO's family covers the closure of ONE's position {o}"
        )));
    }
    let (next, avoided) = match rule {
        BmRule::Compact => (bm_one_compact(&core)?, None),
        BmRule::DenseGDelta(g) => (
            bm_one_dense_gdelta(g, n, &core, &arena.hull)?,
            Some(g.deleted.nth(n, &arena.hull)),
        ),
    };
    let cover = avoid_cover(&next, &arena.space)?;
    Ok(MainStep {
        core,
        next: RSet::from(next),
        avoided,
        cover,
    })
}

pub struct MainStep {
    pub core: RSet,
    pub next: RSet,
    pub avoided: Option<Rational>,
    pub cover: Cover,
}

/// `one:main-compact` and `one:main-gdelta:<enum>`.
pub struct OneMain {
    rule: BmRule,
    arena: Arena,
    ruleset: Ruleset,
    opening: Interval,
    cert: NestedCertificate,
    pending: Cover,
    broken: bool,
}

impl OneMain {
    pub fn new(rule: BmRule, arena: &Arena, ruleset: Ruleset) -> Result<Self, StrategyError> {
        let opening = bm_one_opening(&arena.space)?;
        let pending = avoid_cover(&opening, &arena.space)?;
        Ok(OneMain {
            rule,
            arena: arena.clone(),
            ruleset,
            cert: NestedCertificate {
                opens: vec![RSet::from(opening.clone())],
                ..Default::default()
            },
            opening,
            pending,
            broken: false,
        })
    }

    fn restart(&mut self) -> Result<(), StrategyError> {
        self.cert = NestedCertificate {
            opens: vec![RSet::from(self.opening.clone())],
            ..Default::default()
        };
        self.pending = avoid_cover(&self.opening, &self.arena.space)?;
        Ok(())
    }
}

impl OneStrategy for OneMain {
    fn cover(&mut self, _info: &InningInfo) -> Result<Vec<RSet>, StrategyError> {
        Ok(self.pending.members().to_vec())
    }

    fn observe(&mut self, _info: &InningInfo, family: &[RSet]) -> Result<(), StrategyError> {
        if self.broken {
            return Ok(());
        }
        let o = self.cert.opens.last().expect("opening is always present").clone();
        let n = self.cert.cores.len();
        match one_main_step(&self.rule, n, &o, family, &self.arena) {
            Ok(step) => {
                self.cert.cores.push(step.core);
                self.cert.opens.push(step.next);
                self.cert.avoided.extend(step.avoided);
                self.pending = step.cover;
                Ok(())
            }
            // closures of a merely disjoint family may fill the position
            Err(StrategyError::Invariant(_)) if self.ruleset == Ruleset::Disjoint => {
                self.broken = true;
                Ok(())
            }
            Err(e) => Err(e),
        }
    }

    fn limit_cover(&mut self, _digest: &LimitDigest) -> Result<Vec<RSet>, StrategyError> {
        self.restart()?;
        Ok(self.pending.members().to_vec())
    }

    fn certificate(&self) -> Option<NestedCertificate> {
        (!self.broken).then(|| self.cert.clone())
    }
}
