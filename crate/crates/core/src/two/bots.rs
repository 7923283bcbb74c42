//! Simple TWO players used as opponents in tests and reports.

use std::collections::BTreeMap;

use crate::covers::Cover;
use crate::sets::{RSet, Rational};
use crate::strategy::{InningInfo, StrategyError, TwoStrategy};

/// `two:empty`: never plays anything.
pub struct EmptyTwo;

impl TwoStrategy for EmptyTwo {
    fn respond(&mut self, _info: &InningInfo, _cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        Ok(Vec::new())
    }
}

/// `two:first-member`: the first member of each cover.
pub struct FirstMemberTwo;

impl TwoStrategy for FirstMemberTwo {
    fn respond(&mut self, _info: &InningInfo, cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        Ok(cover.members().first().cloned().into_iter().collect())
    }
}

/// `two:greedy`: members in index order, skipping any whose closure meets
/// the closure of one already taken.
pub struct GreedyTwo;

impl TwoStrategy for GreedyTwo {
    fn respond(&mut self, _info: &InningInfo, cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        // closed components taken so far, keyed by left end; they are
        // pairwise disjoint, so only the nearest one starting at or before
        // a candidate's right end can meet it
        let mut taken_parts: BTreeMap<Rational, Rational> = BTreeMap::new();
        let mut taken = Vec::new();
        for m in cover.members() {
            let c = m.closure();
            let meets = c.components().iter().any(|iv| {
                taken_parts
                    .range(..=iv.hi().clone())
                    .next_back()
                    .is_some_and(|(_, hi)| hi >= iv.lo())
            });
            if !meets {
                for iv in c.components() {
                    taken_parts.insert(iv.lo().clone(), iv.hi().clone());
                }
                taken.push(m.clone());
            }
        }
        Ok(taken)
    }
}
