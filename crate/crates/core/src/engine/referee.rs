use serde::Serialize;

use crate::covers::{Cover, CoverError};
use crate::sets::{is_discrete, is_disjoint, refines, FamilyRejection, RSet, Rational};
use crate::strategy::{Arena, Ruleset};

/// Why a move was refused.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Rejection {
    EmptyMember {
        index: usize,
    },
    /// The member is not an open subset of the space.
    NotOpen {
        index: usize,
        set: String,
    },
    IllegalRefinement {
        index: usize,
        set: String,
    },
    NotDiscrete {
        first: usize,
        second: usize,
        #[serde(serialize_with = "crate::serde_util::rational")]
        point: Rational,
    },
    NotDisjoint {
        first: usize,
        second: usize,
        #[serde(serialize_with = "crate::serde_util::rational")]
        point: Rational,
    },
    NotCovering {
        #[serde(serialize_with = "crate::serde_util::rational")]
        point: Rational,
    },
    BadCover {
        reason: String,
    },
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use crate::sets::fmt_rational;
        match self {
            Rejection::EmptyMember { index } => write!(f, "member {index} is empty"),
            Rejection::NotOpen { index, set } => write!(f, "member {index} = {set} is not open in the space"),
            Rejection::IllegalRefinement { index, set } => {
                write!(f, "member {index} = {set} lies in no member of the cover")
            }
            Rejection::NotDiscrete { first, second, point } => write!(
                f,
                "not discrete: closures of members {first} and {second} share {}",
                fmt_rational(point)
            ),
            Rejection::NotDisjoint { first, second, point } => {
                write!(f, "not disjoint: members {first} and {second} share {}", fmt_rational(point))
            }
            Rejection::NotCovering { point } => write!(f, "not a cover: {} is uncovered", fmt_rational(point)),
            Rejection::BadCover { reason } => write!(f, "not a cover: {reason}"),
        }
    }
}

/// What an accepted family certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Accepted {
    pub witnesses: Vec<usize>,
    pub min_gap: Option<Rational>,
}

fn check_open(space: &RSet, sets: &[RSet]) -> Result<(), Rejection> {
    for (index, m) in sets.iter().enumerate() {
        if m.is_empty() {
            return Err(Rejection::EmptyMember { index });
        }
        if !m.is_open_in(space) {
            return Err(Rejection::NotOpen {
                index,
                set: m.to_string(),
            });
        }
    }
    Ok(())
}

/// Judges TWO's family against the inning's cover. Checks, in order:
/// nonempty members, openness in the space, refinement, then discreteness
/// or disjointness. The empty family is always legal.
pub fn referee_step(ruleset: Ruleset, space: &RSet, cover: &Cover, family: &[RSet]) -> Result<Accepted, Rejection> {
    check_open(space, family)?;
    let r = refines(family, cover.members());
    if let Some(index) = r.first_failure() {
        return Err(Rejection::IllegalRefinement {
            index,
            set: family[index].to_string(),
        });
    }
    let witnesses = r.witnesses.iter().map(|w| w.expect("refinement holds")).collect();
    let shared = |rej: FamilyRejection| match rej {
        FamilyRejection::EmptyMember { index } => (index, index, None),
        FamilyRejection::SharedPoint { first, second, point } => (first, second, Some(point)),
    };
    let min_gap = match ruleset {
        Ruleset::Discrete => match is_discrete(family) {
            Ok(d) => d.min_gap().cloned(),
            Err(rej) => {
                let (first, second, point) = shared(rej);
                return Err(Rejection::NotDiscrete {
                    first,
                    second,
                    point: point.unwrap_or_default(),
                });
            }
        },
        Ruleset::Disjoint => match is_disjoint(family) {
            Ok(d) => d.min_gap().cloned(),
            Err(rej) => {
                let (first, second, point) = shared(rej);
                return Err(Rejection::NotDisjoint {
                    first,
                    second,
                    point: point.unwrap_or_default(),
                });
            }
        },
    };
    Ok(Accepted { witnesses, min_gap })
}

/// Judges ONE's proposed cover: members must be nonempty, their traces on
/// the space open there, and the traces must cover the arena's cover target.
/// Returns the cover by traces, which is what TWO gets to see.
pub fn validate_cover(arena: &Arena, members: &[RSet]) -> Result<Cover, Rejection> {
    if let Some(index) = members.iter().position(RSet::is_empty) {
        return Err(Rejection::EmptyMember { index });
    }
    let traces: Vec<RSet> = members.iter().map(|m| m.intersect(&arena.space)).collect();
    for (index, t) in traces.iter().enumerate() {
        if !t.is_empty() && !t.is_open_in(&arena.space) {
            return Err(Rejection::NotOpen {
                index,
                set: members[index].to_string(),
            });
        }
    }
    let kept: Vec<RSet> = traces.into_iter().filter(|t| !t.is_empty()).collect();
    Cover::new(arena.cover_target(), kept).map_err(|e| match e {
        CoverError::NotCovering(point) => Rejection::NotCovering { point },
        other => Rejection::BadCover {
            reason: other.to_string(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{int, rat, Interval};
    use crate::targets::TargetSpec;
    use crate::two::chain_puncture_refinement;

    fn unit_arena() -> Arena {
        Arena::interval(Interval::closed(int(0), int(1)).unwrap(), TargetSpec::Full)
    }

    fn sets(xs: &[&str]) -> Vec<RSet> {
        xs.iter().map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn referee_examples() {
        let arena = unit_arena();
        let cover = validate_cover(&arena, &sets(&["(-1/8,1/2)", "(1/4,9/8)"])).unwrap();
        let p = chain_puncture_refinement(&cover).unwrap();
        assert_eq!(
            referee_step(Ruleset::Discrete, &arena.space, &cover, &p.family),
            Err(Rejection::NotDiscrete {
                first: 0,
                second: 1,
                point: rat(3, 8)
            })
        );
        assert!(referee_step(Ruleset::Disjoint, &arena.space, &cover, &p.family).is_ok());
        for r in [Ruleset::Discrete, Ruleset::Disjoint] {
            assert!(referee_step(r, &arena.space, &cover, &[]).is_ok());
        }
    }

    #[test]
    fn rejections_carry_witnesses() {
        let arena = unit_arena();
        let cover = validate_cover(&arena, &sets(&["(-1/8,1/2)", "(1/4,9/8)"])).unwrap();
        let ok = referee_step(Ruleset::Discrete, &arena.space, &cover, &sets(&["(1/10,1/5)", "(3/10,2/5)"])).unwrap();
        assert_eq!(ok.witnesses, vec![0, 0]);
        assert_eq!(ok.min_gap, Some(rat(1, 10)));
        let err = referee_step(Ruleset::Discrete, &arena.space, &cover, &sets(&["(0,1)"])).unwrap_err();
        assert!(matches!(err, Rejection::IllegalRefinement { index: 0, .. }));
        let err = referee_step(Ruleset::Discrete, &arena.space, &cover, &sets(&["(0,1/2);(1/2,1)"])).unwrap_err();
        assert!(matches!(err, Rejection::IllegalRefinement { .. }));
        let err = referee_step(Ruleset::Discrete, &arena.space, &cover, &sets(&["[1/10,1/5)"])).unwrap_err();
        assert!(matches!(err, Rejection::NotOpen { .. }));
        let err = validate_cover(&arena, &sets(&["(0,1/2)", "(1/4,1]"])).unwrap_err();
        assert_eq!(err, Rejection::NotCovering { point: int(0) });
        assert_eq!(err.to_string(), "not a cover: 0 is uncovered");
    }
}
