use crate::covers::{lebesgue_number_on, Cover, CoverError};
use crate::sets::{is_discrete, pow3_neg, DiscreteFamily, Interval, RSet, Rational};
use crate::strategy::{Arena, InningInfo, StrategyError, TwoStrategy};
use crate::targets::CantorSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorShot {
    pub family: DiscreteFamily,
    pub level: u32,
    pub gamma: Rational,
}

/// One discrete family covering the whole Cantor set: the level-`n` pieces,
/// each fattened by a third of its length, for the least `n` that makes the
/// fattened pieces shorter than the Lebesgue number.
pub fn cantor_one_shot(cover: &Cover, spec: &CantorSpec, space: &RSet) -> Result<CantorShot, CoverError> {
    let ambient = spec.ambient();
    let delta = lebesgue_number_on(cover.members(), ambient)?;
    let five_thirds = Rational::new(5.into(), 3.into());
    let mut n = 0u32;
    while &five_thirds * spec.piece_length(n) >= delta {
        n += 1;
    }
    let gamma = pow3_neg(n + 1) * ambient.length();
    let members: Vec<RSet> = spec
        .level(n)
        .iter()
        .map(|p| {
            let fat = Interval::open(p.lo() - &gamma, p.hi() + &gamma).expect("gamma > 0");
            RSet::from(fat).intersect(space)
        })
        .collect();
    let family = is_discrete(&members).expect("fattened pieces keep a gap of a third of their spacing");
    Ok(CantorShot { family, level: n, gamma })
}

/// `two:cantor-oneshot`: covers the Cantor set of the hull in the first inning.
pub struct CantorTwo {
    spec: CantorSpec,
    space: RSet,
    done: bool,
}

impl CantorTwo {
    pub fn new(arena: &Arena) -> Result<Self, StrategyError> {
        let spec = CantorSpec::new(arena.hull.clone())
            .ok_or_else(|| StrategyError::Unsupported("the Cantor set needs an ambient of positive length".into()))?;
        Ok(CantorTwo {
            spec,
            space: arena.space.clone(),
            done: false,
        })
    }
}

impl TwoStrategy for CantorTwo {
    fn respond(&mut self, _info: &InningInfo, cover: &Cover) -> Result<Vec<RSet>, StrategyError> {
        if self.done {
            return Ok(Vec::new());
        }
        self.done = true;
        Ok(cantor_one_shot(cover, &self.spec, &self.space)?.family.into_members())
    }
}
