//! The interfaces the referee drives, shared by both players' strategies.

use serde::Serialize;
use thiserror::Error;

use crate::covers::{Cover, CoverError};
use crate::ordinal::OrdinalCNF;
use crate::sets::{Interval, RSet, Rational};
use crate::targets::TargetSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    /// The strategy's own correctness argument failed; a bug, never a game outcome.
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("protocol error: {0}")]
    Protocol(String),
    #[error("strategy does not apply here: {0}")]
    Unsupported(String),
    /// A human player closed the input stream.
    #[error("input closed")]
    Aborted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ruleset {
    /// TWO's families must have pairwise disjoint closures.
    Discrete,
    /// TWO's families need only be pairwise disjoint.
    Disjoint,
}

impl std::fmt::Display for Ruleset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ruleset::Discrete => "discrete",
            Ruleset::Disjoint => "disjoint",
        })
    }
}

impl std::str::FromStr for Ruleset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "d" | "discrete" => Ok(Ruleset::Discrete),
            "c" | "disjoint" => Ok(Ruleset::Disjoint),
            other => Err(format!("unknown ruleset {other:?}; expected d|discrete or c|disjoint")),
        }
    }
}

/// Where a game is played: the space `X` (a closed subset of the line),
/// its hull used as the reference interval, and the target `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    pub space: RSet,
    pub hull: Interval,
    pub target: TargetSpec,
}

impl Arena {
    pub fn interval(ambient: Interval, target: TargetSpec) -> Self {
        Arena {
            space: RSet::from(ambient.clone()),
            hull: ambient,
            target,
        }
    }

    /// The closed set ONE's covers must cover.
    pub fn cover_target(&self) -> RSet {
        self.target.cover_target(&self.hull).intersect(&self.space)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InningInfo {
    pub label: OrdinalCNF,
    /// Number of innings materialized before this one.
    pub step: usize,
}

impl InningInfo {
    pub fn new(label: OrdinalCNF, step: usize) -> Self {
        InningInfo { label, step }
    }
}

/// What a limit-stage move may depend on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitDigest {
    pub limit: OrdinalCNF,
    pub innings_played: usize,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub covered_measure: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitPolicy {
    /// The limit cover is a function of [`LimitDigest`] only.
    Digest,
    /// The limit cover may depend on the whole history; not simulable.
    Adaptive,
}

pub trait TwoStrategy {
    fn respond(&mut self, info: &InningInfo, cover: &Cover) -> Result<Vec<RSet>, StrategyError>;

    /// Asked at a limit stage after the limit cover is revealed: whether
    /// another pre-limit inning should be materialized first.
    fn wants_extension(&mut self, _limit_cover: &Cover) -> Result<bool, StrategyError> {
        Ok(false)
    }

    fn respond_limit(&mut self, info: &InningInfo, cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        self.respond(info, cover)
    }
}

/// ONE's certificate that TWO cannot cover: `O_0 ⊇ T_0 ⊇ cl(O_1)`, ... where
/// `T_n = O_n ∖ cl(⋃ family_n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NestedCertificate {
    #[serde(serialize_with = "crate::serde_util::display_seq")]
    pub opens: Vec<RSet>,
    #[serde(serialize_with = "crate::serde_util::display_seq")]
    pub cores: Vec<RSet>,
    /// Points the nested sets were required to avoid, one per inning.
    #[serde(serialize_with = "crate::serde_util::rationals")]
    pub avoided: Vec<Rational>,
}

impl NestedCertificate {
    /// Checks the nesting `cl(O_{n+1}) ⊆ T_n ⊆ O_n` and the avoided points
    /// against the families actually played; returns the failing inning.
    pub fn check(&self, families: &[Vec<RSet>]) -> Result<(), usize> {
        if self.opens.is_empty() || self.cores.len() + 1 != self.opens.len() {
            return Err(0);
        }
        for (n, core) in self.cores.iter().enumerate() {
            let fam = families.get(n).map(Vec::as_slice).unwrap_or(&[]);
            let expect = self.opens[n].subtract(&crate::sets::closure_union(fam));
            if core != &expect || core.is_empty() || !core.is_subset(&self.opens[n]) {
                return Err(n);
            }
            let next = &self.opens[n + 1];
            if next.is_empty() || !next.closure().is_subset(core) {
                return Err(n);
            }
            if let Some(q) = self.avoided.get(n) {
                if next.closure().contains_point(q) {
                    return Err(n);
                }
            }
        }
        Ok(())
    }

    pub fn last_open(&self) -> Option<&RSet> {
        self.opens.last()
    }
}

pub trait OneStrategy {
    fn cover(&mut self, info: &InningInfo) -> Result<Vec<RSet>, StrategyError>;

    /// Sees TWO's accepted family for the inning just played.
    fn observe(&mut self, _info: &InningInfo, _family: &[RSet]) -> Result<(), StrategyError> {
        Ok(())
    }

    fn limit_policy(&self) -> LimitPolicy {
        LimitPolicy::Digest
    }

    fn limit_cover(&mut self, digest: &LimitDigest) -> Result<Vec<RSet>, StrategyError>;

    fn certificate(&self) -> Option<NestedCertificate> {
        None
    }
}
