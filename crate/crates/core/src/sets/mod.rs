//! Exact rational point sets on the line.
//!
//! Every set the games manipulate is a finite union of intervals with
//! rational endpoints. Arithmetic is exact; there is no floating point
//! anywhere in the crate.

mod family;
mod interval;
mod rset;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use family::{
    closure_union, is_discrete, is_disjoint, refines, witness_radius, DisjointFamily,
    DiscreteFamily, FamilyRejection, Radius, Refinement,
};
pub use interval::Interval;
pub use rset::RSet;

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("malformed interval {0}: need lo < hi, or lo = hi with both ends closed")]
    MalformedInterval(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

/// Shorthand constructor used throughout strategies and tests.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(input: &str) -> Result<Rational, SetError> {
    let err = || SetError::Parse {
        what: "rational",
        input: input.to_string(),
    };
    let s = input.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// `p/q`, or `p` for integers.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn half(x: &Rational) -> Rational {
    x / int(2)
}

pub(crate) fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

/// `2^-n` as an exact rational.
pub fn pow2_neg(n: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << n as usize)
}

/// `3^-n` as an exact rational.
pub fn pow3_neg(n: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(3), n as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse_in_lowest_terms() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert_eq!(parse_rational("6/-8").unwrap(), rat(-3, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(fmt_rational(&rat(-6, 8)), "-3/4");
        assert_eq!(fmt_rational(&int(7)), "7");
    }

    #[test]
    fn powers() {
        assert_eq!(pow2_neg(10), rat(1, 1024));
        assert_eq!(pow3_neg(4), rat(1, 81));
    }
}
