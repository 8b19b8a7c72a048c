//! Exact rational arithmetic helpers.
//!
//! All geometry in this crate is carried out over arbitrary-precision
//! rationals; there is no floating point anywhere in the core. The scalar
//! type is [`Rational`], an alias for [`num_rational::BigRational`], which
//! keeps fractions reduced with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// The coordinate type of all geometry: an exact, always-reduced fraction.
pub type Rational = num_rational::BigRational;

/// Shorthand for `p/q` as a [`Rational`].
///
/// Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Error produced when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part {0:?}")]
    BadInteger(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p/q"` or `"p"` into an exact rational. No floats are involved.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| ParseRationalError::BadInteger(s.to_owned()))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| ParseRationalError::BadInteger(s.to_owned()))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_owned()));
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
/// Round-trips exactly through [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// The floor of `r` as a big integer.
pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Reduces `r` modulo 1 into `[0, 1)`.
pub fn mod1(r: &Rational) -> Rational {
    r - r.floor()
}

/// Sign of `r` as `-1`, `0` or `+1`.
pub fn sign(r: &Rational) -> i64 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// All integers `m` with `lo <= m <= hi`.
pub fn integers_in(lo: &Rational, hi: &Rational) -> Vec<BigInt> {
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let mut m = lo.ceil().to_integer();
    let top = hi.floor().to_integer();
    while m <= top {
        out.push(m.clone());
        m += 1;
    }
    out
}

/// Distance from `r` to the nearest integer.
pub fn dist_to_int(r: &Rational) -> Rational {
    let f = mod1(r);
    let g = Rational::one() - &f;
    if f <= g {
        f
    } else {
        g
    }
}

/// Converts an integer-valued rational to `i64`.
///
/// Panics if `r` is not an integer or does not fit in `i64`; callers use
/// this only for values that are integers by construction.
pub fn to_i64(r: &Rational) -> i64 {
    assert!(is_integer(r), "expected an integer, got {}", r);
    i64::try_from(r.numer().clone()).expect("integer out of i64 range")
}
