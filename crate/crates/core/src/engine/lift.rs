//! Closed subspaces: restricting a game to `Y ⊆ X`, and extending a ONE
//! strategy for `Y` to the whole space by fattening each cover member with
//! `X ∖ Y`.

use crate::one::OneId;
use crate::sets::RSet;
use crate::strategy::{Arena, InningInfo, LimitDigest, LimitPolicy, NestedCertificate, OneStrategy, StrategyError};
use crate::targets::TargetSpec;

use super::{play_with, EngineError, GameConfig, Transcript};

/// The same match played on the closed subspace `y`: moves are traced on
/// `y` and the target becomes `y`.
pub fn lift_to_closed_subspace(config: &GameConfig, y: &RSet) -> Result<GameConfig, EngineError> {
    if y.is_empty() {
        return Err(EngineError::Config("subspace must be nonempty".into()));
    }
    if !y.is_closed() {
        return Err(EngineError::Config(format!("subspace {y} is not closed")));
    }
    let mut lifted = config.clone();
    lifted.subspace = Some(y.clone());
    lifted.target = TargetSpec::ClosedSet(y.clone());
    lifted.arena()?;
    Ok(lifted)
}

/// ONE's strategy for the subspace `Y`, played in `X`: the member `V` of
/// a cover of `Y` becomes `V ∪ (X ∖ Y)`, which is open in `X` because `V`
/// is open in `Y`. TWO's families are shown to the inner strategy traced on `Y`.
pub struct ExtendedFromSubspace<S> {
    inner: S,
    y: RSet,
    outside: RSet,
}

impl<S: OneStrategy> ExtendedFromSubspace<S> {
    pub fn new(inner: S, space: &RSet, y: &RSet) -> Self {
        ExtendedFromSubspace {
            inner,
            y: y.clone(),
            outside: space.subtract(y),
        }
    }

    fn fatten(&self, members: Vec<RSet>) -> Vec<RSet> {
        members.into_iter().map(|v| v.union(&self.outside)).collect()
    }
}

impl<S: OneStrategy> OneStrategy for ExtendedFromSubspace<S> {
    fn cover(&mut self, info: &InningInfo) -> Result<Vec<RSet>, StrategyError> {
        let m = self.inner.cover(info)?;
        Ok(self.fatten(m))
    }

    fn observe(&mut self, info: &InningInfo, family: &[RSet]) -> Result<(), StrategyError> {
        let traced: Vec<RSet> = family
            .iter()
            .map(|f| f.intersect(&self.y))
            .filter(|f| !f.is_empty())
            .collect();
        self.inner.observe(info, &traced)
    }

    fn limit_policy(&self) -> LimitPolicy {
        self.inner.limit_policy()
    }

    fn limit_cover(&mut self, digest: &LimitDigest) -> Result<Vec<RSet>, StrategyError> {
        let m = self.inner.limit_cover(digest)?;
        Ok(self.fatten(m))
    }

    fn certificate(&self) -> Option<NestedCertificate> {
        self.inner.certificate()
    }
}

impl OneStrategy for Box<dyn OneStrategy + '_> {
    fn cover(&mut self, info: &InningInfo) -> Result<Vec<RSet>, StrategyError> {
        (**self).cover(info)
    }

    fn observe(&mut self, info: &InningInfo, family: &[RSet]) -> Result<(), StrategyError> {
        (**self).observe(info, family)
    }

    fn limit_policy(&self) -> LimitPolicy {
        (**self).limit_policy()
    }

    fn limit_cover(&mut self, digest: &LimitDigest) -> Result<Vec<RSet>, StrategyError> {
        (**self).limit_cover(digest)
    }

    fn certificate(&self) -> Option<NestedCertificate> {
        (**self).certificate()
    }
}

/// Plays `config` on its space `X` with `config.one` built for the closed
/// subspace `y` and extended to `X`; TWO is `config.two` on `X`.
pub fn play_lifted_one(config: &GameConfig, y: &RSet) -> Result<Transcript, EngineError> {
    let x = config.arena()?;
    if !y.is_subset(&x.space) {
        return Err(EngineError::Config(format!("{y} is not a subset of the space")));
    }
    let on_y = lift_to_closed_subspace(config, y)?.arena()?;
    let inner = build_one(config.one, &on_y, config)?;
    let one = ExtendedFromSubspace::new(inner, &x.space, y);
    let two = config.two.build(&x).map_err(super::config_error)?;
    play_with(config, Box::new(one), two)
}

fn build_one(id: OneId, arena: &Arena, config: &GameConfig) -> Result<Box<dyn OneStrategy>, EngineError> {
    id.build(arena, config.ruleset).map_err(super::config_error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play, Outcome};
    use crate::sets::Interval;
    use crate::strategy::Ruleset;
    use crate::two::TwoId;

    fn s(x: &str) -> RSet {
        x.parse().unwrap()
    }

    fn cfg(one: OneId, two: TwoId, len: &str) -> GameConfig {
        GameConfig::new(Ruleset::Discrete, len.parse().unwrap(), one, two, 8).unwrap()
    }

    #[test]
    fn lifting_sets_the_target() {
        let c = lift_to_closed_subspace(&cfg(OneId::Grid, TwoId::Halving, "w"), &s("[1/4,1/2]")).unwrap();
        assert_eq!(c.target, TargetSpec::ClosedSet(s("[1/4,1/2]")));
        assert_eq!(c.arena().unwrap().hull.to_string(), "[1/4,1/2]");
        assert!(lift_to_closed_subspace(&c, &RSet::empty()).is_err());
        assert!(lift_to_closed_subspace(&c, &s("(0,1)")).is_err());
    }

    #[test]
    fn two_wins_restrict_to_the_subspace() {
        let x = cfg(OneId::Grid, TwoId::HalvingOmegaPlus1, "w+1");
        assert_eq!(play(&x).unwrap().verdict.outcome, Outcome::TwoWinsCovered);
        let y = lift_to_closed_subspace(&x, &s("[1/4,1/2]")).unwrap();
        assert_eq!(play(&y).unwrap().verdict.outcome, Outcome::TwoWinsCovered);
    }

    #[test]
    fn one_wins_on_a_component_extend_to_the_space() {
        let mut x = cfg(OneId::MainCompact, TwoId::Halving, "w").with_ambient(Interval::closed(crate::sets::int(0), crate::sets::int(3)).unwrap());
        x.subspace = Some(s("[0,1];[2,3]"));
        let y = s("[0,1]");
        let on_y = play(&lift_to_closed_subspace(&x, &y).unwrap()).unwrap();
        assert_eq!(on_y.verdict.outcome, Outcome::OneWinsCertified);
        let on_x = play_lifted_one(&x, &y).unwrap();
        assert_eq!(on_x.verdict.outcome, Outcome::OneWinsCertified, "{:?}", on_x.verdict);
    }
}
