//! Ordinals below ω^ω in Cantor normal form, the α⁻ operator, and the
//! schedule that turns a transfinite game length into finitely many
//! simulated innings.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("cannot parse ordinal from {0:?}; expected terms like w^2*3, w*2, w, 5 joined by +")]
    Parse(String),
    #[error("alpha-minus is only defined for infinite ordinals, got {0}")]
    Finite(OrdinalCNF),
    #[error("game length must be positive")]
    ZeroLength,
    #[error("inning budget must be at least 1")]
    ZeroBudget,
}

/// `ω^e1·c1 + ... + ω^ek·ck` with `e1 > ... > ek` and every `ci >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OrdinalCNF {
    terms: Vec<(u32, u64)>,
}

impl OrdinalCNF {
    pub fn zero() -> Self {
        OrdinalCNF::default()
    }

    pub fn nat(n: u64) -> Self {
        Self::monomial(0, n)
    }

    pub fn omega() -> Self {
        Self::monomial(1, 1)
    }

    /// `ω^e · c`.
    pub fn monomial(e: u32, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            OrdinalCNF { terms: vec![(e, c)] }
        }
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs summed left to right.
    pub fn from_terms<I: IntoIterator<Item = (u32, u64)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (e, c)| acc.add(&Self::monomial(e, c)))
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|&(e, _)| e == 0)
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, n)] => Some(*n),
            _ => None,
        }
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.finite_part() == 0
    }

    /// The trailing natural-number part `n_{m+1}`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some(&(0, n)) => n,
            _ => 0,
        }
    }

    pub fn successor(&self) -> Self {
        self.add(&Self::nat(1))
    }

    /// Ordinal sum: terms of `self` below the leading exponent of `rhs` are absorbed.
    pub fn add(&self, rhs: &OrdinalCNF) -> OrdinalCNF {
        let Some(&(lead, lead_c)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(u32, u64)> = self.terms.iter().copied().take_while(|&(e, _)| e >= lead).collect();
        match terms.last_mut() {
            Some((e, c)) if *e == lead => *c += lead_c,
            _ => terms.push((lead, lead_c)),
        }
        terms.extend_from_slice(&rhs.terms[1..]);
        OrdinalCNF { terms }
    }

    /// α⁻ for infinite α: unchanged when α is a limit of limits; `ω·(n_m − 1)`
    /// plus one when α ends in a bare `ω·n_m`; otherwise the finite tail becomes 1.
    pub fn alpha_minus(&self) -> Result<OrdinalCNF, OrdinalError> {
        if self.is_finite() {
            return Err(OrdinalError::Finite(self.clone()));
        }
        let n_tail = self.finite_part();
        let mut terms: Vec<(u32, u64)> = self.terms.iter().copied().filter(|&(e, _)| e > 0).collect();
        let &(beta_m, n_m) = terms.last().expect("infinite ordinals have a positive exponent");
        if n_tail == 0 && beta_m > 1 {
            return Ok(self.clone());
        }
        if n_tail == 0 && beta_m == 1 {
            if n_m == 1 {
                terms.pop();
            } else {
                terms.last_mut().unwrap().1 -= 1;
            }
        }
        terms.push((0, 1));
        Ok(OrdinalCNF { terms })
    }
}

impl Ord for OrdinalCNF {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let o = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for OrdinalCNF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrdinalCNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for OrdinalCNF {
    type Err = OrdinalError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = || OrdinalError::Parse(input.to_string());
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let mut acc = OrdinalCNF::zero();
        for term in s.split('+') {
            let (e, c) = if let Some(rest) = term.strip_prefix("w^") {
                let (e, c) = rest.split_once('*').unwrap_or((rest, "1"));
                (e.parse::<u32>().map_err(|_| err())?, c.parse::<u64>().map_err(|_| err())?)
            } else if let Some(c) = term.strip_prefix("w*") {
                (1, c.parse::<u64>().map_err(|_| err())?)
            } else if term == "w" {
                (1, 1)
            } else {
                (0, term.parse::<u64>().map_err(|_| err())?)
            };
            acc = acc.add(&OrdinalCNF::monomial(e, c));
        }
        Ok(acc)
    }
}

impl Serialize for OrdinalCNF {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrdinalCNF {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ExtensionPolicy {
    /// TWO may ask for up to `max` extra pre-limit innings at each limit stage.
    Lazy { max: u32 },
    Disabled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InningSchedule {
    main_budget: u32,
    extension: ExtensionPolicy,
}

impl InningSchedule {
    pub fn new(main_budget: u32, extension: ExtensionPolicy) -> Result<Self, OrdinalError> {
        if main_budget == 0 {
            return Err(OrdinalError::ZeroBudget);
        }
        Ok(InningSchedule { main_budget, extension })
    }

    pub fn lazy(main_budget: u32) -> Result<Self, OrdinalError> {
        Self::new(main_budget, ExtensionPolicy::Lazy { max: 64 })
    }

    pub fn main_budget(&self) -> u32 {
        self.main_budget
    }

    pub fn extension(&self) -> ExtensionPolicy {
        self.extension
    }

    pub fn max_extensions(&self) -> u32 {
        match self.extension {
            ExtensionPolicy::Lazy { max } => max,
            ExtensionPolicy::Disabled => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InningLabel {
    Inning(OrdinalCNF),
    /// Reached the limit ordinal; pre-limit innings past the budget are unmaterialized.
    LimitMarker(OrdinalCNF),
}

impl fmt::Display for InningLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InningLabel::Inning(o) => write!(f, "{o}"),
            InningLabel::LimitMarker(o) => write!(f, "limit({o})"),
        }
    }
}

/// The innings actually simulated for a game of the given length.
pub fn inning_iterator(length: &OrdinalCNF, schedule: &InningSchedule) -> Result<Vec<InningLabel>, OrdinalError> {
    if length.is_zero() {
        return Err(OrdinalError::ZeroLength);
    }
    let mut out = Vec::new();
    let mut offset = OrdinalCNF::zero();
    for &(e, c) in length.terms() {
        for _ in 0..c {
            block(&offset, e, schedule.main_budget() as u64, &mut out);
            offset = offset.add(&OrdinalCNF::monomial(e, 1));
        }
    }
    Ok(out)
}

fn block(start: &OrdinalCNF, e: u32, budget: u64, out: &mut Vec<InningLabel>) {
    if e == 0 {
        out.push(InningLabel::Inning(start.clone()));
        return;
    }
    for k in 0..budget {
        block(&start.add(&OrdinalCNF::monomial(e - 1, k)), e - 1, budget, out);
    }
    out.push(InningLabel::LimitMarker(start.add(&OrdinalCNF::monomial(e, 1))));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> OrdinalCNF {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(o("w").add(&o("1")), o("w+1"));
        assert_eq!(o("1").add(&o("w")), o("w"));
        assert_eq!(o("w*2").cmp(&o("w+5")), Ordering::Greater);
        assert_eq!(o("w+3").add(&o("w*2+1")), o("w*3+1"));
        assert_eq!(o("w^2+w").add(&o("w^2")), o("w^2*2"));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "7", "w", "w+1", "w*2", "w^2*1+w*2+3", "w^3*2+1"] {
            assert_eq!(o(s).to_string(), s);
        }
        assert_eq!(o("w^2"), OrdinalCNF::monomial(2, 1));
        assert_eq!(o("w^2*1"), o("w^2"));
        assert_eq!(o("3+w"), o("w"));
        assert_eq!(o("w+w"), o("w*2"));
        assert!("w^".parse::<OrdinalCNF>().is_err());
        assert!("".parse::<OrdinalCNF>().is_err());
        assert!("x".parse::<OrdinalCNF>().is_err());
    }

    #[test]
    fn alpha_minus_examples() {
        assert_eq!(o("w^2").alpha_minus().unwrap(), o("w^2"));
        assert_eq!(o("w*2").alpha_minus().unwrap(), o("w+1"));
        assert_eq!(o("w+5").alpha_minus().unwrap(), o("w+1"));
        assert_eq!(o("w").alpha_minus().unwrap(), o("1"));
        assert_eq!(o("w^2+w").alpha_minus().unwrap(), o("w^2+1"));
        assert!(o("4").alpha_minus().is_err());
    }

    #[test]
    fn schedules() {
        let labels = |len: &str, b| {
            inning_iterator(&o(len), &InningSchedule::lazy(b).unwrap())
                .unwrap()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        assert_eq!(labels("w", 5), "0 1 2 3 4 limit(w)");
        assert_eq!(labels("w+1", 3), "0 1 2 limit(w) w");
        assert_eq!(labels("3", 7), "0 1 2");
        assert_eq!(labels("w*2+1", 2), "0 1 limit(w) w w+1 limit(w*2) w*2");
        assert_eq!(labels("w^2", 2), "0 1 limit(w) w w+1 limit(w*2) limit(w^2*1)");
        assert!(inning_iterator(&OrdinalCNF::zero(), &InningSchedule::lazy(1).unwrap()).is_err());
        assert!(InningSchedule::lazy(0).is_err());
    }
}
