use crate::sets::{Interval, RSet, Rational};
use crate::strategy::StrategyError;

/// TWO's Banach–Mazur reply avoiding a closed nowhere dense `f`: the middle
/// half of the largest component of `o ∖ cl(f)` (leftmost on ties).
pub fn bm_two_first_category(o: &RSet, f: &RSet) -> Result<Interval, StrategyError> {
    let rest = o.subtract(&f.closure());
    let comp = rest
        .largest_component()
        .filter(|c| !c.is_point())
        .ok_or_else(|| StrategyError::Invariant(format!("{f} is not nowhere dense in {o}")))?;
    Ok(middle_fraction(comp, 4))
}

/// The open middle part of `comp` left after removing `1/k` of its length at each end.
pub fn middle_fraction(comp: &Interval, k: i64) -> Interval {
    let cut = comp.length() / Rational::from_integer(k.into());
    Interval::open(comp.lo() + &cut, comp.hi() - &cut).expect("k > 2")
}
