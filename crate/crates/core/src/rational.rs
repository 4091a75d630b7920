//! Exact rational numbers. Values are always stored in lowest terms with a
//! positive denominator, which `num_rational::BigRational` guarantees.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Sign of a rational as an ordering against zero.
pub fn sign(q: &Rational) -> Ordering {
    if q.is_zero() {
        Ordering::Equal
    } else if q.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Parses `p` or `p/q` with optional leading minus. `q` must be nonzero.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::Parse {
        line: 0,
        msg: format!("bad rational {text:?}: {msg}"),
    };
    let mut parts = text.splitn(2, '/');
    let num_text = parts.next().unwrap_or("");
    let num: BigInt = num_text
        .parse()
        .map_err(|_| bad("numerator is not an integer"))?;
    match parts.next() {
        None => Ok(Rational::from_integer(num)),
        Some(den_text) => {
            let den: BigInt = den_text
                .parse()
                .map_err(|_| bad("denominator is not an integer"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Renders `p` for integers and `p/q` otherwise; round-trips via
/// [`parse_rational`].
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
