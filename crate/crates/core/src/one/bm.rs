//! ONE's Banach–Mazur moves: open rational intervals, each with closure
//! inside TWO's last move.

use serde::Serialize;

use crate::sets::{Interval, RSet};
use crate::strategy::StrategyError;
use crate::targets::GDeltaSpec;
use crate::two::middle_fraction;

/// The alternating moves `O_0 ⊇ T_0 ⊇ O_1 ⊇ ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BMState {
    pub moves: Vec<RSet>,
}

impl BMState {
    pub fn push(&mut self, m: RSet) {
        self.moves.push(m);
    }

    pub fn last(&self) -> Option<&RSet> {
        self.moves.last()
    }

    /// Every move is nonempty and lies inside the previous one.
    pub fn is_nested(&self) -> bool {
        self.moves.iter().all(|m| !m.is_empty()) && self.moves.windows(2).all(|w| w[1].is_subset(&w[0]))
    }

    /// ONE's moves (even positions) have closures inside the preceding TWO move.
    pub fn closures_nested(&self) -> bool {
        self.moves
            .iter()
            .enumerate()
            .skip(2)
            .step_by(2)
            .all(|(i, m)| m.closure().is_subset(&self.moves[i - 1]))
    }
}

/// Middle half of the largest component of `space`: ONE's opening move.
pub fn bm_one_opening(space: &RSet) -> Result<Interval, StrategyError> {
    space
        .largest_component()
        .filter(|c| !c.is_point())
        .map(|c| middle_fraction(c, 4))
        .ok_or_else(|| StrategyError::Unsupported("the space has no interval component".into()))
}

/// Middle third of the largest component of `t` (leftmost on ties).
pub fn bm_one_compact(t: &RSet) -> Result<Interval, StrategyError> {
    t.largest_component()
        .filter(|c| !c.is_point())
        .map(|c| middle_fraction(c, 3))
        .ok_or_else(|| StrategyError::Invariant(format!("TWO's move {t} has empty interior")))
}

/// Middle third of the largest component of `t ∩ G_n`.
pub fn bm_one_dense_gdelta(spec: &GDeltaSpec, n: usize, t: &RSet, hull: &Interval) -> Result<Interval, StrategyError> {
    bm_one_compact(&t.intersect(&spec.dense_open(n, hull)))
}
