//! Match driver: validates every move, runs the inning schedule with the
//! lazy limit-stage protocol, and adjudicates the finished or truncated play.

mod adjudicate;
mod bm;
mod lift;
mod referee;
mod report;

use std::io::Write;

use serde::Serialize;
use thiserror::Error;

pub use adjudicate::{target_covered, Coverage, PartialCoverage};
pub use bm::{play_bm, BmOne, BmReport};
pub use lift::{lift_to_closed_subspace, play_lifted_one, ExtendedFromSubspace};
pub use referee::{referee_step, validate_cover, Accepted, Rejection};
pub use report::{length_bracket_report, BracketCell, BracketReport, LengthSpec};

use crate::covers::Cover;
use crate::one::OneId;
use crate::ordinal::{inning_iterator, InningLabel, InningSchedule, OrdinalCNF, OrdinalError};
use crate::sets::{Interval, RSet, Rational};
use crate::strategy::{
    Arena, InningInfo, LimitDigest, LimitPolicy, NestedCertificate, OneStrategy, Ruleset, StrategyError,
    TwoStrategy,
};
use crate::targets::{TargetError, TargetSpec};
use crate::two::TwoId;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ILLEGAL_MOVE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error(transparent)]
    Target(#[from] TargetError),
    #[error("bad configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Strategy(StrategyError),
    #[error("play aborted by a player")]
    Aborted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameConfig {
    pub ruleset: Ruleset,
    pub length: OrdinalCNF,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub ambient: Interval,
    /// A closed subspace of the ambient to play on instead of the ambient.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subspace: Option<RSet>,
    pub target: TargetSpec,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub one: OneId,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub two: TwoId,
    pub schedule: InningSchedule,
}

impl GameConfig {
    pub fn new(ruleset: Ruleset, length: OrdinalCNF, one: OneId, two: TwoId, budget: u32) -> Result<Self, EngineError> {
        Ok(GameConfig {
            ruleset,
            length,
            ambient: unit_interval(),
            subspace: None,
            target: TargetSpec::Full,
            one,
            two,
            schedule: InningSchedule::lazy(budget)?,
        })
    }

    pub fn with_target(mut self, target: TargetSpec) -> Self {
        self.target = target;
        self
    }

    pub fn with_ambient(mut self, ambient: Interval) -> Self {
        self.ambient = ambient;
        self
    }

    pub fn arena(&self) -> Result<Arena, EngineError> {
        if !self.ambient.is_closed() || self.ambient.is_point() {
            return Err(EngineError::Config(format!(
                "ambient {} must be a closed interval of positive length",
                self.ambient
            )));
        }
        let ambient = RSet::from(self.ambient.clone());
        let space = match &self.subspace {
            None => ambient,
            Some(y) => {
                if y.is_empty() || !y.is_closed() || !y.is_subset(&ambient) {
                    return Err(EngineError::Config(format!("subspace {y} must be a nonempty closed subset of the ambient")));
                }
                y.clone()
            }
        };
        self.target.validate(&self.ambient)?;
        let hull = space.hull().expect("nonempty");
        Ok(Arena {
            space,
            hull,
            target: self.target.clone(),
        })
    }
}

pub fn unit_interval() -> Interval {
    Interval::closed(Rational::from_integer(0.into()), Rational::from_integer(1.into())).expect("0 < 1")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub refines: bool,
    pub ruleset: Ruleset,
    #[serde(serialize_with = "crate::serde_util::opt_rational")]
    pub min_gap: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    #[serde(serialize_with = "crate::serde_util::display")]
    pub inning: OrdinalCNF,
    pub one: Vec<RSet>,
    pub two: Vec<RSet>,
    pub checks: Checks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    One,
    Two,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::One => "ONE",
            Side::Two => "TWO",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    TwoWinsCovered,
    OneWinsCertified,
    Truncated,
    /// TWO made an illegal move.
    OneWinsForfeit,
    /// ONE made an illegal move.
    TwoWinsForfeit,
    InvariantViolation,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::OneWinsForfeit | Outcome::TwoWinsForfeit => EXIT_ILLEGAL_MOVE,
            Outcome::InvariantViolation => EXIT_INVARIANT,
            _ => EXIT_OK,
        }
    }

    pub fn two_won(self) -> bool {
        matches!(self, Outcome::TwoWinsCovered | Outcome::TwoWinsForfeit)
    }

    pub fn one_won(self) -> bool {
        matches!(self, Outcome::OneWinsCertified | Outcome::OneWinsForfeit)
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Exact coverage of the target.
    Coverage {
        union: RSet,
        #[serde(skip_serializing_if = "Option::is_none")]
        partial: Option<PartialCoverage>,
    },
    /// ONE's nested-closure chain; `uncovered` is the last open set, which
    /// misses every family played.
    Nested {
        chain: NestedCertificate,
        uncovered: RSet,
    },
    /// A complete play whose union misses part of the target.
    Uncovered {
        uncovered: RSet,
        #[serde(serialize_with = "crate::serde_util::opt_rational")]
        witness: Option<Rational>,
    },
    Statistics {
        #[serde(serialize_with = "crate::serde_util::rational")]
        covered_measure: Rational,
        #[serde(serialize_with = "crate::serde_util::rational")]
        uncovered_measure: Rational,
        #[serde(skip_serializing_if = "Option::is_none")]
        partial: Option<PartialCoverage>,
        note: String,
    },
    Rejection {
        offender: Side,
        #[serde(serialize_with = "crate::serde_util::display")]
        inning: OrdinalCNF,
        rejection: Rejection,
        moved: Vec<RSet>,
    },
    Violation {
        side: Side,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub config: GameConfig,
    pub records: Vec<Record>,
    pub verdict: Verdict,
    /// Innings that ran as extensions before a limit stage.
    pub extension_innings: usize,
}

impl Transcript {
    pub fn union(&self) -> RSet {
        RSet::union_all(self.records.iter().flat_map(|r| r.two.iter()))
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.outcome.exit_code()
    }

    /// JSON Lines: one object per inning, then the verdict.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        #[derive(Serialize)]
        struct Last<'a> {
            verdict: Outcome,
            certificate: &'a Certificate,
            config: &'a GameConfig,
            extension_innings: usize,
        }
        serde_json::to_writer(
            &mut out,
            &Last {
                verdict: self.verdict.outcome,
                certificate: &self.verdict.certificate,
                config: &self.config,
                extension_innings: self.extension_innings,
            },
        )?;
        out.write_all(b"\n")
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }
}

/// Runs a match between the strategies named in the config.
pub fn play(config: &GameConfig) -> Result<Transcript, EngineError> {
    let arena = config.arena()?;
    let one = config.one.build(&arena, config.ruleset).map_err(config_error)?;
    let two = config.two.build(&arena).map_err(config_error)?;
    play_with(config, one, two)
}

fn config_error(e: StrategyError) -> EngineError {
    match e {
        StrategyError::Unsupported(m) => EngineError::Config(m),
        other => EngineError::Strategy(other),
    }
}

/// Runs a match with explicit strategy values; the ids in `config` are only recorded.
pub fn play_with(
    config: &GameConfig,
    mut one: Box<dyn OneStrategy + '_>,
    mut two: Box<dyn TwoStrategy + '_>,
) -> Result<Transcript, EngineError> {
    let arena = config.arena()?;
    let labels = inning_iterator(&config.length, &config.schedule)?;
    let has_limit_inning = labels
        .windows(2)
        .any(|w| matches!((&w[0], &w[1]), (InningLabel::LimitMarker(_), InningLabel::Inning(_))));
    if has_limit_inning && one.limit_policy() == LimitPolicy::Adaptive {
        return Err(EngineError::Config(
            "ONE's limit-stage move depends on the whole history; only digest-declared limit moves can be simulated".into(),
        ));
    }
    let mut m = Match {
        config,
        arena,
        records: Vec::new(),
        segment: Vec::new(),
        union: RSet::empty(),
        step: 0,
        extension_innings: 0,
    };
    let verdict = match m.run(&labels, one.as_mut(), two.as_mut()) {
        Ok(()) => m.adjudicate(&labels, one.as_ref())?,
        Err(Stop::Verdict(v)) => v,
        Err(Stop::Error(e)) => return Err(e),
    };
    Ok(Transcript {
        config: config.clone(),
        records: m.records,
        verdict,
        extension_innings: m.extension_innings,
    })
}

enum Stop {
    Verdict(Verdict),
    Error(EngineError),
}

struct Match<'c> {
    config: &'c GameConfig,
    arena: Arena,
    records: Vec<Record>,
    /// Families since the last limit stage, for checking ONE's certificate.
    segment: Vec<Vec<RSet>>,
    union: RSet,
    step: usize,
    extension_innings: usize,
}

fn strategy_stop(side: Side, e: StrategyError) -> Stop {
    match e {
        StrategyError::Aborted => Stop::Error(EngineError::Aborted),
        other => Stop::Verdict(Verdict {
            outcome: Outcome::InvariantViolation,
            certificate: Certificate::Violation {
                side,
                message: other.to_string(),
            },
        }),
    }
}

fn forfeit(offender: Side, inning: &OrdinalCNF, rejection: Rejection, moved: Vec<RSet>) -> Stop {
    Stop::Verdict(Verdict {
        outcome: match offender {
            Side::One => Outcome::TwoWinsForfeit,
            Side::Two => Outcome::OneWinsForfeit,
        },
        certificate: Certificate::Rejection {
            offender,
            inning: inning.clone(),
            rejection,
            moved,
        },
    })
}

impl Match<'_> {
    fn run(&mut self, labels: &[InningLabel], one: &mut dyn OneStrategy, two: &mut dyn TwoStrategy) -> Result<(), Stop> {
        let mut limit_cover: Option<(OrdinalCNF, Cover, Vec<RSet>)> = None;
        let mut last_inning: Option<OrdinalCNF> = None;
        for (i, label) in labels.iter().enumerate() {
            match label {
                InningLabel::Inning(o) => {
                    let info = InningInfo::new(o.clone(), self.step);
                    match limit_cover.take() {
                        Some((lambda, cover, raw)) if &lambda == o => {
                            let family = two.respond_limit(&info, &cover).map_err(|e| strategy_stop(Side::Two, e))?;
                            self.judge(&info, &cover, raw, family, one)?;
                        }
                        _ => self.ordinary_inning(&info, one, two)?,
                    }
                    last_inning = Some(o.clone());
                }
                InningLabel::LimitMarker(lambda) => {
                    let next_is_limit = matches!(labels.get(i + 1), Some(InningLabel::Inning(o)) if o == lambda);
                    if !next_is_limit {
                        continue;
                    }
                    let digest = LimitDigest {
                        limit: lambda.clone(),
                        innings_played: self.step,
                        covered_measure: self.union.intersect(&self.arena.cover_target()).measure(),
                    };
                    let raw = one.limit_cover(&digest).map_err(|e| strategy_stop(Side::One, e))?;
                    let cover = validate_cover(&self.arena, &raw).map_err(|r| forfeit(Side::One, lambda, r, raw.clone()))?;
                    self.segment.clear();
                    let mut extensions = 0;
                    let max = self.config.schedule.max_extensions();
                    while extensions < max && two.wants_extension(&cover).map_err(|e| strategy_stop(Side::Two, e))? {
                        let label = last_inning.as_ref().map(OrdinalCNF::successor).unwrap_or_default();
                        let info = InningInfo::new(label.clone(), self.step);
                        self.ordinary_inning(&info, one, two)?;
                        last_inning = Some(label);
                        extensions += 1;
                        self.extension_innings += 1;
                    }
                    limit_cover = Some((lambda.clone(), cover, raw));
                }
            }
        }
        Ok(())
    }

    fn ordinary_inning(&mut self, info: &InningInfo, one: &mut dyn OneStrategy, two: &mut dyn TwoStrategy) -> Result<(), Stop> {
        let raw = one.cover(info).map_err(|e| strategy_stop(Side::One, e))?;
        let cover = validate_cover(&self.arena, &raw).map_err(|r| forfeit(Side::One, &info.label, r, raw.clone()))?;
        let family = two.respond(info, &cover).map_err(|e| strategy_stop(Side::Two, e))?;
        self.judge(info, &cover, raw, family, one)
    }

    fn judge(
        &mut self,
        info: &InningInfo,
        cover: &Cover,
        raw_cover: Vec<RSet>,
        family: Vec<RSet>,
        one: &mut dyn OneStrategy,
    ) -> Result<(), Stop> {
        let accepted = referee_step(self.config.ruleset, &self.arena.space, cover, &family)
            .map_err(|r| forfeit(Side::Two, &info.label, r, family.clone()))?;
        one.observe(info, &family).map_err(|e| strategy_stop(Side::One, e))?;
        self.union = self.union.union(&RSet::union_all(&family));
        self.segment.push(family.clone());
        self.records.push(Record {
            inning: info.label.clone(),
            one: raw_cover,
            two: family,
            checks: Checks {
                refines: true,
                ruleset: self.config.ruleset,
                min_gap: accepted.min_gap,
            },
        });
        self.step += 1;
        Ok(())
    }

    fn adjudicate(&self, labels: &[InningLabel], one: &dyn OneStrategy) -> Result<Verdict, EngineError> {
        let truncated = matches!(labels.last(), Some(InningLabel::LimitMarker(_)));
        // innings skipped before a limit were played as empty families, so
        // non-coverage only decides finite games
        let finite = !labels.iter().any(|l| matches!(l, InningLabel::LimitMarker(_)));
        let coverage = target_covered(&self.arena, &self.union, self.step);
        if coverage.covered {
            return Ok(Verdict {
                outcome: Outcome::TwoWinsCovered,
                certificate: Certificate::Coverage {
                    union: self.union.clone(),
                    partial: coverage.partial,
                },
            });
        }
        if finite {
            if let Some(uncovered) = coverage.uncovered {
                return Ok(Verdict {
                    outcome: Outcome::OneWinsCertified,
                    certificate: Certificate::Uncovered {
                        uncovered,
                        witness: coverage.witness,
                    },
                });
            }
        }
        if truncated {
            if let Some(chain) = one.certificate() {
                if let Some(v) = self.judge_certificate(chain) {
                    return Ok(v);
                }
            }
        }
        let target = self.arena.cover_target();
        let covered_measure = self.union.intersect(&target).measure();
        Ok(Verdict {
            outcome: Outcome::Truncated,
            certificate: Certificate::Statistics {
                uncovered_measure: target.measure() - &covered_measure,
                covered_measure,
                partial: coverage.partial,
                note: if truncated {
                    format!("play truncated after {} materialized innings", self.step)
                } else {
                    format!(
                        "{} materialized innings; the rest were empty, which decides nothing for TWO's strategy",
                        self.step
                    )
                },
            },
        })
    }

    /// `None` when the chain certifies nothing about this target.
    fn judge_certificate(&self, chain: NestedCertificate) -> Option<Verdict> {
        let violation = |message: String| Verdict {
            outcome: Outcome::InvariantViolation,
            certificate: Certificate::Violation { side: Side::One, message },
        };
        if chain.cores.is_empty() {
            return None;
        }
        if let Err(n) = chain.check(&self.segment) {
            return Some(violation(format!("nested-closure chain fails at inning {n} of its segment")));
        }
        let last = chain.last_open().expect("nonempty chain").clone();
        // the chain only speaks for its own segment; earlier segments may reach it
        if !last.intersect(&self.union).is_empty() {
            return None;
        }
        let applies = match &self.arena.target {
            TargetSpec::Full | TargetSpec::ClosedSet(_) => last.closure().is_subset(&self.arena.cover_target()),
            TargetSpec::GDelta(g) => {
                let expect = g.deleted.first(chain.avoided.len(), &self.arena.hull);
                chain.avoided.len() == chain.cores.len() && chain.avoided == expect
            }
            TargetSpec::Cantor | TargetSpec::Countable(_) => false,
        };
        applies.then(|| Verdict {
            outcome: Outcome::OneWinsCertified,
            certificate: Certificate::Nested { chain, uncovered: last },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::pow2_neg;

    fn o(s: &str) -> OrdinalCNF {
        s.parse().unwrap()
    }

    #[test]
    fn omega_plus_one_against_the_grid() {
        let cfg = GameConfig::new(Ruleset::Discrete, o("w+1"), OneId::Grid, TwoId::HalvingOmegaPlus1, 8).unwrap();
        let t = play(&cfg).unwrap();
        assert_eq!(t.verdict.outcome, Outcome::TwoWinsCovered);
        assert_eq!(t.union(), RSet::from(unit_interval()));
        let mut u = RSet::empty();
        for (n, r) in t.records.iter().take(8).enumerate() {
            u = u.union(&RSet::union_all(&r.two));
            assert_eq!(RSet::from(unit_interval()).subtract(&u).measure(), pow2_neg(n as u32 + 1));
        }
    }

    #[test]
    fn main_compact_certifies_against_halving() {
        let cfg = GameConfig::new(Ruleset::Discrete, o("w"), OneId::MainCompact, TwoId::Halving, 25).unwrap();
        let t = play(&cfg).unwrap();
        assert_eq!(t.verdict.outcome, Outcome::OneWinsCertified, "{:?}", t.verdict);
        assert_eq!(t.records.len(), 25);
    }

    #[test]
    fn puncture_wins_the_disjoint_game_and_forfeits_the_discrete_one() {
        let cfg = GameConfig::new(Ruleset::Disjoint, o("2"), OneId::Grid, TwoId::ChainPuncture, 8).unwrap();
        let t = play(&cfg).unwrap();
        assert_eq!(t.verdict.outcome, Outcome::TwoWinsCovered);
        let cfg = GameConfig { ruleset: Ruleset::Discrete, ..cfg };
        let t = play(&cfg).unwrap();
        assert_eq!(t.verdict.outcome, Outcome::OneWinsForfeit);
        assert_eq!(t.exit_code(), EXIT_ILLEGAL_MOVE);
        assert!(matches!(
            t.verdict.certificate,
            Certificate::Rejection {
                rejection: Rejection::NotDiscrete { .. },
                ..
            }
        ));
    }

    #[test]
    fn transcripts_are_deterministic_jsonl() {
        let cfg = GameConfig::new(Ruleset::Discrete, o("3"), OneId::AvoidFixed, TwoId::Greedy, 4).unwrap();
        let a = play(&cfg).unwrap().to_jsonl();
        let b = play(&cfg).unwrap().to_jsonl();
        assert_eq!(a, b);
        let lines: Vec<serde_json::Value> = a.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0]["inning"], "0");
        assert_eq!(lines[0]["checks"]["ruleset"], "discrete");
        assert!(lines[3]["verdict"].is_string());
    }
}
