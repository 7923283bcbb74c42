//! TWO's halving refinement of an interval, its iteration over a residual,
//! and the limit-stage move that finishes the ω+1 game.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::covers::{lebesgue_number_on, lebesgue_number_on_set, Cover, CoverError};
use crate::sets::{half, is_discrete, DiscreteFamily, Interval, RSet, Rational};
use crate::strategy::{Arena, InningInfo, StrategyError, TwoStrategy};

use super::{end_slack, min_opt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halving {
    pub family: DiscreteFamily,
    /// The closed even-index pieces, then the right endpoint as a point.
    pub residual: Vec<Interval>,
    pub grid_size: u64,
}

/// Splits `[a,b]` into `M` equal pieces, `M` even, each short enough to fit
/// in one member, and plays the open odd-index pieces.
///
/// `M = 2` when one member already contains `[a,b]`; otherwise `M` is the
/// smallest even integer with `L/M` below the Lebesgue number.
pub fn halving_refinement(cover: &Cover, piece: &Interval) -> Result<Halving, CoverError> {
    if piece.is_point() || !piece.is_closed() {
        return Err(CoverError::TargetNotInterval);
    }
    let length = piece.length();
    let m: BigInt = if cover.member_containing(piece).is_some() {
        BigInt::from(2)
    } else {
        let delta = lebesgue_number_on(cover.members(), piece)?;
        let ratio = &length / &(delta * BigInt::from(2));
        ratio.numer().div_floor(ratio.denom()) * 2 + 2
    };
    let step = &length / Rational::from_integer(m.clone());
    let grid_size: u64 = (&m).try_into().unwrap_or(u64::MAX);
    let a = piece.lo();
    let point = |i: u64| a + &step * BigInt::from(i);
    let mut members = Vec::new();
    let mut residual = Vec::new();
    for i in 0..grid_size {
        let lo = point(i);
        let hi = if i + 1 == grid_size { piece.hi().clone() } else { point(i + 1) };
        if i.is_odd() {
            members.push(RSet::from(Interval::open(lo, hi).expect("positive step")));
        } else {
            residual.push(Interval::closed(lo, hi).expect("positive step"));
        }
    }
    residual.push(Interval::point(piece.hi().clone()));
    let family = is_discrete(&members).expect("odd grid pieces are separated by even ones");
    Ok(Halving {
        family,
        residual,
        grid_size,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalvingState {
    pub residual: Vec<Interval>,
    pub inning: u32,
}

impl HalvingState {
    pub fn new(residual: Vec<Interval>) -> Self {
        HalvingState { residual, inning: 0 }
    }

    pub fn on(piece: Interval) -> Self {
        Self::new(vec![piece])
    }

    pub fn measure(&self) -> Rational {
        self.residual.iter().map(Interval::length).sum()
    }

    pub fn longest(&self) -> Rational {
        self.residual.iter().map(Interval::length).max().unwrap_or_else(Rational::zero)
    }
}

/// Halves every nondegenerate residual interval against the same cover.
pub fn halving_step(state: &HalvingState, cover: &Cover) -> Result<(DiscreteFamily, HalvingState), StrategyError> {
    if state.residual.is_empty() {
        return Err(StrategyError::Protocol("halving step on an empty residual".into()));
    }
    let mut members = Vec::new();
    let mut residual = Vec::new();
    for piece in &state.residual {
        if piece.is_point() {
            residual.push(piece.clone());
            continue;
        }
        let h = halving_refinement(cover, piece)?;
        members.extend(h.family.into_members());
        residual.extend(h.residual);
    }
    let family = is_discrete(&members)
        .map_err(|r| StrategyError::Invariant(format!("halving pieces of distinct residual intervals meet: {r:?}")))?;
    Ok((
        family,
        HalvingState {
            residual,
            inning: state.inning + 1,
        },
    ))
}

/// Covers the whole residual at once: each piece is fattened by
/// `γ = (smallest residual gap)/3`, capped so the fattened closure stays in
/// the member containing the piece, and clipped to `space`.
///
/// Needs every residual piece to lie in a single member; see
/// [`needs_extension`].
pub fn limit_move(state: &HalvingState, limit_cover: &Cover, space: &RSet) -> Result<DiscreteFamily, StrategyError> {
    let mut sorted = state.residual.clone();
    sorted.sort_by(|x, y| x.cmp_lo(y));
    let min_gap = sorted.windows(2).map(|w| w[0].gap(&w[1])).min();
    if min_gap.as_ref().is_some_and(|g| !g.is_positive()) {
        return Err(StrategyError::Invariant("residual pieces touch".into()));
    }
    let fallback = space.hull().map(|h| h.length()).unwrap_or_else(Rational::zero) + Rational::from_integer(1.into());
    let mut members = Vec::new();
    for piece in &sorted {
        let idx = limit_cover.member_containing(piece).ok_or_else(|| {
            StrategyError::Protocol(format!("residual piece {piece} lies in no member of the limit cover"))
        })?;
        let comp = limit_cover.members()[idx]
            .component_containing(piece.lo())
            .expect("member contains the piece");
        let (left, right) = end_slack(comp, piece);
        let gamma = [min_gap.clone().map(|g| g / Rational::from_integer(3.into())), left.map(|s| half(&s)), right.map(|s| half(&s))]
            .into_iter()
            .fold(None, min_opt)
            .unwrap_or_else(|| fallback.clone());
        let fat = Interval::open(piece.lo() - &gamma, piece.hi() + &gamma).expect("gamma > 0");
        members.push(RSet::from(fat).intersect(space));
    }
    is_discrete(&members).map_err(|r| StrategyError::Invariant(format!("limit move is not discrete: {r:?}")))
}

/// Whether some residual piece is not shorter than the limit cover's
/// Lebesgue number over its target.
pub fn needs_extension(state: &HalvingState, limit_cover: &Cover) -> Result<bool, CoverError> {
    match lebesgue_number_on_set(limit_cover.members(), limit_cover.target())? {
        None => Ok(false),
        Some(delta) => Ok(state.residual.iter().any(|p| p.length() >= delta)),
    }
}

/// `two:halving` and, with the limit protocol, `two:halving-omega-plus-1`.
pub struct HalvingTwo {
    state: HalvingState,
    space: RSet,
    finish_at_limit: bool,
}

impl HalvingTwo {
    pub fn new(arena: &Arena, finish_at_limit: bool) -> Self {
        HalvingTwo {
            state: HalvingState::new(arena.cover_target().components().to_vec()),
            space: arena.space.clone(),
            finish_at_limit,
        }
    }

    pub fn state(&self) -> &HalvingState {
        &self.state
    }
}

impl TwoStrategy for HalvingTwo {
    fn respond(&mut self, _info: &InningInfo, cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        if self.state.residual.iter().all(Interval::is_point) {
            return Ok(Vec::new());
        }
        let (family, next) = halving_step(&self.state, cover)?;
        self.state = next;
        Ok(family.into_members())
    }

    fn wants_extension(&mut self, limit_cover: &Cover) -> Result<bool, StrategyError> {
        Ok(self.finish_at_limit && needs_extension(&self.state, limit_cover)?)
    }

    fn respond_limit(&mut self, info: &InningInfo, cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        if !self.finish_at_limit {
            return self.respond(info, cover);
        }
        let family = limit_move(&self.state, cover, &self.space)?;
        self.state.residual.clear();
        Ok(family.into_members())
    }
}
