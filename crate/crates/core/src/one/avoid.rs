use crate::covers::{Cover, CoverError};
use crate::sets::{rat, Interval, RSet, Rational};

/// A two-member cover of `space` neither of whose members has a closure
/// containing `o = (c,d)`: the members are `space ∖ X₁` and `space ∖ X₂` for
/// the disjoint closed blocks `X₁ = [c+L/4, c+3L/8]`, `X₂ = [c+5L/8, c+3L/4]`.
pub fn avoid_cover(o: &Interval, space: &RSet) -> Result<Cover, CoverError> {
    if o.is_point() || !RSet::from(o.clone()).is_subset(space) {
        return Err(CoverError::BadTarget);
    }
    let (c, len) = (o.lo(), o.length());
    let at = |k: i64| -> Rational { c + &len * rat(k, 8) };
    let block = |lo: i64, hi: i64| RSet::from(Interval::closed(at(lo), at(hi)).expect("increasing"));
    let members = vec![space.subtract(&block(2, 3)), space.subtract(&block(5, 6))];
    Cover::new(space.clone(), members)
}
