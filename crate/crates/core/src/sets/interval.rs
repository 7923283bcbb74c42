use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::{fmt_rational, half, parse_rational, Rational, SetError};

/// A nonempty interval with rational endpoints.
///
/// Either `lo < hi`, or `lo == hi` with both ends closed (a single point).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
    lo_open: bool,
    hi_open: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_open: bool, hi_open: bool) -> Result<Self, SetError> {
        let ok = match lo.cmp(&hi) {
            Ordering::Less => true,
            Ordering::Equal => !lo_open && !hi_open,
            Ordering::Greater => false,
        };
        let iv = Interval {
            lo,
            hi,
            lo_open,
            hi_open,
        };
        if ok {
            Ok(iv)
        } else {
            Err(SetError::MalformedInterval(iv.to_string()))
        }
    }

    /// Like [`Interval::new`] but yields `None` for an empty range.
    pub(crate) fn try_new(lo: Rational, hi: Rational, lo_open: bool, hi_open: bool) -> Option<Self> {
        Self::new(lo, hi, lo_open, hi_open).ok()
    }

    pub fn open(lo: Rational, hi: Rational) -> Result<Self, SetError> {
        Self::new(lo, hi, true, true)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self, SetError> {
        Self::new(lo, hi, false, false)
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_open(&self) -> bool {
        self.lo_open && self.hi_open
    }

    pub fn is_closed(&self) -> bool {
        !self.lo_open && !self.hi_open
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        half(&(&self.lo + &self.hi))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_open { x > &self.lo } else { x >= &self.lo };
        let below = if self.hi_open { x < &self.hi } else { x <= &self.hi };
        above && below
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        let lo_ok = match self.lo.cmp(&other.lo) {
            Ordering::Less => true,
            Ordering::Equal => !self.lo_open || other.lo_open,
            Ordering::Greater => false,
        };
        let hi_ok = match self.hi.cmp(&other.hi) {
            Ordering::Greater => true,
            Ordering::Equal => !self.hi_open || other.hi_open,
            Ordering::Less => false,
        };
        lo_ok && hi_ok
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_open) = match self.lo.cmp(&other.lo) {
            Ordering::Less => (other.lo.clone(), other.lo_open),
            Ordering::Greater => (self.lo.clone(), self.lo_open),
            Ordering::Equal => (self.lo.clone(), self.lo_open || other.lo_open),
        };
        let (hi, hi_open) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_open),
            Ordering::Greater => (other.hi.clone(), other.hi_open),
            Ordering::Equal => (self.hi.clone(), self.hi_open || other.hi_open),
        };
        Interval::try_new(lo, hi, lo_open, hi_open)
    }

    pub fn closure(&self) -> Interval {
        Interval::point(self.lo.clone()).with_hi(self.hi.clone(), false)
    }

    /// `None` for a point.
    pub fn interior(&self) -> Option<Interval> {
        Interval::try_new(self.lo.clone(), self.hi.clone(), true, true)
    }

    fn with_hi(mut self, hi: Rational, hi_open: bool) -> Interval {
        self.hi = hi;
        self.hi_open = hi_open;
        self
    }

    /// Distance from `x` to the closure of this interval.
    pub fn distance_to(&self, x: &Rational) -> Rational {
        if x < &self.lo {
            &self.lo - x
        } else if x > &self.hi {
            x - &self.hi
        } else {
            Rational::zero()
        }
    }

    /// Distance between the closures of two intervals.
    pub fn gap(&self, other: &Interval) -> Rational {
        if other.lo > self.hi {
            &other.lo - &self.hi
        } else if self.lo > other.hi {
            &self.lo - &other.hi
        } else {
            Rational::zero()
        }
    }

    /// Sort key: by left endpoint, closed before open.
    pub(crate) fn cmp_lo(&self, other: &Interval) -> Ordering {
        self.lo
            .cmp(&other.lo)
            .then(self.lo_open.cmp(&other.lo_open))
    }

    /// True when the two intervals overlap or touch so that their union is an interval.
    pub(crate) fn merges_with(&self, next: &Interval) -> bool {
        match next.lo.cmp(&self.hi) {
            Ordering::Less => next.hi >= self.lo,
            Ordering::Equal => !(self.hi_open && next.lo_open),
            Ordering::Greater => false,
        }
    }

    pub(crate) fn absorb(&mut self, next: &Interval) {
        if next.cmp_lo(self) == Ordering::Less {
            self.lo = next.lo.clone();
            self.lo_open = next.lo_open;
        }
        match next.hi.cmp(&self.hi) {
            Ordering::Greater => {
                self.hi = next.hi.clone();
                self.hi_open = next.hi_open;
            }
            Ordering::Equal => self.hi_open = self.hi_open && next.hi_open,
            Ordering::Less => {}
        }
    }

    /// A point of the interval: the left endpoint when it is included, else the midpoint.
    pub fn sample_point(&self) -> Rational {
        if self.lo_open {
            self.midpoint()
        } else {
            self.lo.clone()
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_open { '(' } else { '[' },
            fmt_rational(&self.lo),
            fmt_rational(&self.hi),
            if self.hi_open { ')' } else { ']' }
        )
    }
}

impl FromStr for Interval {
    type Err = SetError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = || SetError::Parse {
            what: "interval",
            input: input.to_string(),
        };
        let s = input.trim();
        let lo_open = match s.chars().next() {
            Some('(') => true,
            Some('[') => false,
            _ => return Err(err()),
        };
        let hi_open = match s.chars().last() {
            Some(')') => true,
            Some(']') => false,
            _ => return Err(err()),
        };
        if s.len() < 2 {
            return Err(err());
        }
        let body = &s[1..s.len() - 1];
        let (lo, hi) = body.split_once(',').ok_or_else(err)?;
        let lo = parse_rational(lo).map_err(|_| err())?;
        let hi = parse_rational(hi).map_err(|_| err())?;
        Interval::new(lo, hi, lo_open, hi_open)
    }
}
