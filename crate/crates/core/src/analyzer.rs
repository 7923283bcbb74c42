//! Replay-based analysis of TWO strategies against the ball covers `B_n`:
//! upper approximations of the closed cores `C_τ`, a greedy search for
//! plays in which a point escapes TWO's closures, and uncovered points of
//! one-shot discrete families.

use serde::Serialize;
use thiserror::Error;

use crate::covers::{ball_cover_on, BallCoverIndex};
use crate::engine::{referee_step, validate_cover, Rejection};
use crate::ordinal::OrdinalCNF;
use crate::sets::{closure_union, DiscreteFamily, Interval, RSet, Rational};
use crate::strategy::{Arena, InningInfo, Ruleset, StrategyError};
use crate::two::TwoId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzerError {
    #[error("ball-cover indices start at 1")]
    ZeroIndex,
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("{two} moved illegally after covers {indices:?}: {rejection}")]
    Illegal {
        two: String,
        indices: Vec<u32>,
        rejection: Rejection,
    },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("witness {0} is outside the space")]
    WitnessOutside(String),
    #[error("invariant violated: the discrete family covers the connected space")]
    Covered,
}

/// Plays the covers `B_{indices[0]}, B_{indices[1]}, ...` against a fresh
/// copy of `two` and returns TWO's refereed families.
pub fn replay(two: TwoId, arena: &Arena, indices: &[u32]) -> Result<Vec<Vec<RSet>>, AnalyzerError> {
    let mut strategy = two.build(arena)?;
    let mut out = Vec::with_capacity(indices.len());
    for (step, &n) in indices.iter().enumerate() {
        let idx = BallCoverIndex::new(n).ok_or(AnalyzerError::ZeroIndex)?;
        let illegal = |rejection| AnalyzerError::Illegal {
            two: two.to_string(),
            indices: indices[..=step].to_vec(),
            rejection,
        };
        let cover = validate_cover(arena, ball_cover_on(idx, &arena.hull).members()).map_err(illegal)?;
        let info = InningInfo::new(OrdinalCNF::nat(step as u64), step);
        let family = strategy.respond(&info, &cover)?;
        referee_step(Ruleset::Discrete, &arena.space, &cover, &family).map_err(illegal)?;
        out.push(family);
    }
    Ok(out)
}

/// `⋂_{m ≤ depth} cl(⋃ F(B_τ, B_m))`, an upper approximation of `C_τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreApproximation {
    pub tau: Vec<u32>,
    pub depth_m: u32,
    pub set: RSet,
    /// The running intersection after each `m`.
    pub by_depth: Vec<RSet>,
}

pub fn strategy_core(two: TwoId, arena: &Arena, tau: &[u32], depth_m: u32) -> Result<CoreApproximation, AnalyzerError> {
    if depth_m == 0 {
        return Err(AnalyzerError::ZeroDepth);
    }
    let mut set = arena.space.clone();
    let mut by_depth = Vec::with_capacity(depth_m as usize);
    let mut indices = tau.to_vec();
    for m in 1..=depth_m {
        indices.push(m);
        let families = replay(two, arena, &indices)?;
        indices.pop();
        let last = families.last().expect("at least B_m was played");
        set = set.intersect(&closure_union(last));
        by_depth.push(set.clone());
    }
    Ok(CoreApproximation {
        tau: tau.to_vec(),
        depth_m,
        set,
        by_depth,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EscapeStep {
    pub index: u32,
    /// Distance from the witness to the closure of TWO's union at this
    /// inning; `None` when TWO played nothing.
    #[serde(serialize_with = "crate::serde_util::opt_rational")]
    pub distance: Option<Rational>,
}

/// A play `B_{n_1}, ..., B_{n_k}` in which the witness avoids the closure
/// of every family TWO played.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EscapeCertificate {
    #[serde(serialize_with = "crate::serde_util::display")]
    pub two: TwoId,
    pub indices: Vec<u32>,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub witness: Rational,
    pub uncovered_check: Vec<EscapeStep>,
}

impl EscapeCertificate {
    /// Replays the covers and checks every inning again.
    pub fn revalidate(&self, arena: &Arena) -> Result<bool, AnalyzerError> {
        let families = replay(self.two, arena, &self.indices)?;
        Ok(families.len() == self.uncovered_check.len()
            && families
                .iter()
                .zip(&self.uncovered_check)
                .all(|(f, step)| escapes(&self.witness, f) && distance(&self.witness, f) == step.distance))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EscapeSearch {
    Found(EscapeCertificate),
    /// No index up to `search_m` kept the witness outside at inning `failed_at`.
    Exhausted {
        reached: Vec<u32>,
        failed_at: usize,
        search_m: u32,
    },
}

fn escapes(w: &Rational, family: &[RSet]) -> bool {
    !closure_union(family).contains_point(w)
}

fn distance(w: &Rational, family: &[RSet]) -> Option<Rational> {
    closure_union(family).distance_to_point(w)
}

/// Greedy: at each inning take the least `m ≤ search_m` whose response
/// keeps `witness` outside its closure. Failure proves nothing about TWO.
pub fn find_escape(
    two: TwoId,
    arena: &Arena,
    witness: &Rational,
    depth_k: usize,
    search_m: u32,
) -> Result<EscapeSearch, AnalyzerError> {
    if !arena.space.contains_point(witness) {
        return Err(AnalyzerError::WitnessOutside(crate::sets::fmt_rational(witness)));
    }
    if depth_k == 0 || search_m == 0 {
        return Err(AnalyzerError::ZeroDepth);
    }
    let mut indices = Vec::with_capacity(depth_k);
    let mut checks = Vec::with_capacity(depth_k);
    for step in 0..depth_k {
        let mut found = None;
        for m in 1..=search_m {
            indices.push(m);
            let families = replay(two, arena, &indices)?;
            indices.pop();
            let last = families.last().expect("nonempty");
            if escapes(witness, last) {
                found = Some((m, distance(witness, last)));
                break;
            }
        }
        match found {
            Some((m, d)) => {
                indices.push(m);
                checks.push(EscapeStep { index: m, distance: d });
            }
            None => {
                return Ok(EscapeSearch::Exhausted {
                    reached: indices,
                    failed_at: step,
                    search_m,
                })
            }
        }
    }
    Ok(EscapeSearch::Found(EscapeCertificate {
        two,
        indices,
        witness: witness.clone(),
        uncovered_check: checks,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DenseWitness {
    /// An open interval missing every closure.
    Gap {
        #[serde(serialize_with = "crate::serde_util::display")]
        interval: Interval,
    },
    /// A point of the space outside the union.
    Point {
        #[serde(serialize_with = "crate::serde_util::rational")]
        point: Rational,
    },
}

impl DenseWitness {
    /// A rational the family misses.
    pub fn point(&self) -> Rational {
        match self {
            DenseWitness::Gap { interval } => interval.midpoint(),
            DenseWitness::Point { point } => point.clone(),
        }
    }
}

/// Something of the interval `space` a finite discrete family misses:
/// the leftmost gap between closures when there is one, otherwise the
/// leftmost missing interior point, otherwise the left end.
pub fn dense_discrete_witness(family: &DiscreteFamily, space: &Interval) -> Result<DenseWitness, AnalyzerError> {
    let whole = RSet::from(space.clone());
    let outside = whole.subtract(&closure_union(family.members()));
    if let Some(gap) = outside.components().iter().find_map(Interval::interior) {
        return Ok(DenseWitness::Gap { interval: gap });
    }
    let missed = whole.subtract(&family.union());
    let inner = missed
        .components()
        .iter()
        .map(Interval::lo)
        .find(|p| *p != space.lo() && *p != space.hi());
    match inner.or_else(|| missed.components().first().map(Interval::lo)) {
        Some(p) => Ok(DenseWitness::Point { point: p.clone() }),
        None => Err(AnalyzerError::Covered),
    }
}
