//! The Banach–Mazur game on an interval: ONE opens, players alternate
//! nested nonempty open sets.

use serde::Serialize;

use crate::one::{bm_one_compact, bm_one_dense_gdelta, bm_one_opening, BMState};
use crate::sets::{Interval, RSet, Rational};
use crate::targets::{Enumeration, GDeltaSpec};
use crate::two::{bm_two_first_category, TwoId};

use super::EngineError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BmOne {
    /// Middle thirds: the intersection meets the compact space.
    Compact,
    /// Middle thirds avoiding the `n`-th enumerated point: the
    /// intersection lies in the dense G_δ complement.
    DenseGDelta(Enumeration),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BmReport {
    pub state: BMState,
    pub nested: bool,
    pub closures_nested: bool,
    /// Points ONE's closures were required to avoid.
    #[serde(serialize_with = "crate::serde_util::rationals")]
    pub one_avoided: Vec<Rational>,
    /// Points TWO's closures were required to avoid.
    #[serde(serialize_with = "crate::serde_util::rationals")]
    pub two_avoided: Vec<Rational>,
    /// Every required avoidance holds for the final closure.
    pub avoidance_holds: bool,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub last_closure: RSet,
}

/// Plays `rounds` rounds. TWO is `two:empty` (middle halves) or
/// `two:bm-first-category:<enum>`, which steers clear of the `n`-th point.
pub fn play_bm(ambient: &Interval, one: BmOne, two: TwoId, rounds: usize) -> Result<BmReport, EngineError> {
    let space = RSet::from(ambient.clone());
    let two_points = match two {
        TwoId::BmFirstCategory(e) => Some(e),
        TwoId::Empty => None,
        other => {
            return Err(EngineError::Config(format!(
                "{other} has no Banach–Mazur strategy; use two:empty or two:bm-first-category:<enum>"
            )))
        }
    };
    let err = |e| EngineError::Strategy(e);
    let mut state = BMState::default();
    let mut one_avoided = Vec::new();
    let mut two_avoided = Vec::new();
    let mut o = RSet::from(bm_one_opening(&space).map_err(err)?);
    for n in 0..rounds {
        state.push(o.clone());
        let f = match two_points {
            Some(e) => {
                let q = e.nth(n, ambient);
                two_avoided.push(q.clone());
                RSet::from(Interval::point(q))
            }
            None => RSet::empty(),
        };
        let t = RSet::from(bm_two_first_category(&o, &f).map_err(err)?);
        state.push(t.clone());
        o = RSet::from(match one {
            BmOne::Compact => bm_one_compact(&t),
            BmOne::DenseGDelta(e) => {
                one_avoided.push(e.nth(n, ambient));
                bm_one_dense_gdelta(&GDeltaSpec { deleted: e }, n, &t, ambient)
            }
        }
        .map_err(err)?);
    }
    state.push(o);
    let last_closure = state.last().expect("opening pushed").closure();
    let avoidance_holds = one_avoided.iter().chain(&two_avoided).all(|q| !last_closure.contains_point(q));
    Ok(BmReport {
        nested: state.is_nested(),
        closures_nested: state.closures_nested(),
        state,
        one_avoided,
        two_avoided,
        avoidance_holds,
        last_closure,
    })
}
