//! Round-robin matches over a set of game lengths, and the experimental
//! bracket they give for the least length at which TWO can win.

use rayon::prelude::*;
use serde::Serialize;

use crate::one::OneId;
use crate::ordinal::{InningSchedule, OrdinalCNF};
use crate::two::TwoId;

use super::{play, EngineError, GameConfig, Outcome};

pub const BRACKET_LABEL: &str = "experimental bracket, not tp_d";

/// A game length and the inning budget used to truncate it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthSpec {
    pub length: OrdinalCNF,
    pub budget: u32,
}

impl LengthSpec {
    pub fn new(length: OrdinalCNF, budget: u32) -> Self {
        LengthSpec { length, budget }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketCell {
    pub length: OrdinalCNF,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub one: OneId,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub two: TwoId,
    /// `None` when the pairing cannot be played here.
    pub outcome: Option<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketReport {
    pub label: &'static str,
    pub cells: Vec<BracketCell>,
    /// Per length: TWO bots that beat every ONE bot.
    pub two_sweeps: Vec<(OrdinalCNF, Vec<String>)>,
    /// Per length: ONE bots that beat every TWO bot.
    pub one_sweeps: Vec<(OrdinalCNF, Vec<String>)>,
    /// Smallest length with a TWO sweep.
    pub two_sweep_from: Option<OrdinalCNF>,
    /// Largest length with a ONE sweep.
    pub one_sweep_until: Option<OrdinalCNF>,
    /// `(two, α, β)`: a TWO sweep at `α` that did not persist at `β > α`.
    pub monotonicity_failures: Vec<(String, OrdinalCNF, OrdinalCNF)>,
}

/// Plays every `(length, one, two)` cell of `base` with the given
/// catalogs. Forfeits count as wins for the opponent.
pub fn length_bracket_report(
    base: &GameConfig,
    ones: &[OneId],
    twos: &[TwoId],
    lengths: &[LengthSpec],
) -> Result<BracketReport, EngineError> {
    if ones.is_empty() || twos.is_empty() || lengths.is_empty() {
        return Err(EngineError::Config("catalogs and lengths must be nonempty".into()));
    }
    let mut jobs = Vec::new();
    for l in lengths {
        for &one in ones {
            for &two in twos {
                let cfg = GameConfig {
                    length: l.length.clone(),
                    one,
                    two,
                    schedule: InningSchedule::lazy(l.budget)?,
                    ..base.clone()
                };
                jobs.push(cfg);
            }
        }
    }
    let cells: Vec<BracketCell> = jobs
        .par_iter()
        .map(|cfg| {
            let (outcome, error) = match play(cfg) {
                Ok(t) => (Some(t.verdict.outcome), None),
                Err(e) => (None, Some(e.to_string())),
            };
            BracketCell {
                length: cfg.length.clone(),
                one: cfg.one,
                two: cfg.two,
                outcome,
                error,
            }
        })
        .collect();

    let mut sorted: Vec<&OrdinalCNF> = lengths.iter().map(|l| &l.length).collect();
    sorted.sort();
    sorted.dedup();
    let cell = |l: &OrdinalCNF, one: OneId, two: TwoId| {
        cells
            .iter()
            .find(|c| &c.length == l && c.one == one && c.two == two)
            .and_then(|c| c.outcome)
    };
    let mut two_sweeps = Vec::new();
    let mut one_sweeps = Vec::new();
    for &l in &sorted {
        let t: Vec<TwoId> = twos
            .iter()
            .copied()
            .filter(|&two| ones.iter().all(|&one| cell(l, one, two).is_some_and(Outcome::two_won)))
            .collect();
        let o: Vec<String> = ones
            .iter()
            .filter(|&&one| twos.iter().all(|&two| cell(l, one, two).is_some_and(Outcome::one_won)))
            .map(ToString::to_string)
            .collect();
        two_sweeps.push((l.clone(), t));
        one_sweeps.push((l.clone(), o));
    }
    let mut monotonicity_failures = Vec::new();
    for (i, (a, sweepers)) in two_sweeps.iter().enumerate() {
        for two in sweepers {
            for (b, later) in &two_sweeps[i + 1..] {
                if !later.contains(two) {
                    monotonicity_failures.push((two.to_string(), a.clone(), b.clone()));
                }
            }
        }
    }
    let two_sweep_from = two_sweeps.iter().find(|(_, s)| !s.is_empty()).map(|(l, _)| l.clone());
    let one_sweep_until = one_sweeps.iter().rev().find(|(_, s)| !s.is_empty()).map(|(l, _)| l.clone());
    Ok(BracketReport {
        label: BRACKET_LABEL,
        cells,
        two_sweeps: two_sweeps
            .into_iter()
            .map(|(l, s)| (l, s.iter().map(ToString::to_string).collect()))
            .collect(),
        one_sweeps,
        two_sweep_from,
        one_sweep_until,
        monotonicity_failures,
    })
}
