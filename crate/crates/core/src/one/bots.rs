use crate::covers::{ball_cover_on, BallCoverIndex, Cover};
use crate::sets::{Interval, RSet};
use crate::strategy::{Arena, InningInfo, LimitDigest, OneStrategy, StrategyError};

use super::avoid::avoid_cover;
use super::bm::bm_one_opening;

/// Largest ball-cover index `one:grid` will play; `B_n` has `2^(n+2)+1` members.
pub const GRID_MAX_INDEX: u32 = 10;

/// `one:grid`: the ball cover `B_{k+1}` in the inning numbered `k` (capped),
/// and `B_1` at limits.
pub struct GridOne {
    hull: Interval,
    space: RSet,
    cache: Vec<Vec<RSet>>,
}

impl GridOne {
    pub fn new(arena: &Arena) -> Self {
        GridOne {
            hull: arena.hull.clone(),
            space: arena.space.clone(),
            cache: Vec::new(),
        }
    }

    fn ball(&mut self, n: u32) -> Vec<RSet> {
        let n = n.clamp(1, GRID_MAX_INDEX);
        while self.cache.len() < n as usize {
            let idx = BallCoverIndex::new(self.cache.len() as u32 + 1).expect("index >= 1");
            let members = ball_cover_on(idx, &self.hull)
                .members()
                .iter()
                .map(|m| m.intersect(&self.space))
                .filter(|m| !m.is_empty())
                .collect();
            self.cache.push(members);
        }
        self.cache[n as usize - 1].clone()
    }
}

impl OneStrategy for GridOne {
    fn cover(&mut self, info: &InningInfo) -> Result<Vec<RSet>, StrategyError> {
        Ok(self.ball(info.step as u32 + 1))
    }

    fn limit_cover(&mut self, _digest: &LimitDigest) -> Result<Vec<RSet>, StrategyError> {
        Ok(self.ball(1))
    }
}

/// `one:avoid-fixed`: the avoiding cover of the opening move, every inning.
pub struct AvoidFixedOne {
    cover: Cover,
}

impl AvoidFixedOne {
    pub fn new(arena: &Arena) -> Result<Self, StrategyError> {
        let opening = bm_one_opening(&arena.space)?;
        Ok(AvoidFixedOne {
            cover: avoid_cover(&opening, &arena.space)?,
        })
    }
}

impl OneStrategy for AvoidFixedOne {
    fn cover(&mut self, _info: &InningInfo) -> Result<Vec<RSet>, StrategyError> {
        Ok(self.cover.members().to_vec())
    }

    fn limit_cover(&mut self, _digest: &LimitDigest) -> Result<Vec<RSet>, StrategyError> {
        Ok(self.cover.members().to_vec())
    }
}
