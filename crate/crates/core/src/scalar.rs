//! Scalar traits and the exact rational type.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// A commutative field with exact equality semantics for the algorithms in
/// this crate. `BigRational` is the intended instance; `f64` also satisfies
/// the bound and is used for the numeric side.
pub trait Field: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let unit = if n < 0 { -Self::one() } else { Self::one() };
        // Binary expansion keeps this cheap for the small integers we use.
        let mut m = n.unsigned_abs();
        let mut pow = unit;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc + pow.clone();
            }
            pow = pow.clone() + pow;
            m >>= 1;
        }
        acc
    }
}

impl<T> Field for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> {}

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational string")]
    Empty,
    #[error("invalid character {ch:?} at offset {offset} in {input:?}")]
    InvalidChar {
        input: String,
        offset: usize,
        ch: char,
    },
    #[error("missing digits in {0:?}")]
    MissingDigits(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `INT ("/" POSINT)?`, where `INT` is an optional `-` followed by
/// decimal digits and `POSINT` is a positive decimal integer. The result is
/// reduced to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num_part, den_part) = match s.find('/') {
        Some(pos) => (&s[..pos], Some((&s[pos + 1..], pos + 1))),
        None => (s, None),
    };
    let digits = num_part.strip_prefix('-').unwrap_or(num_part);
    let sign_len = num_part.len() - digits.len();
    check_digits(s, digits, sign_len)?;
    let numer: BigInt = num_part
        .parse()
        .map_err(|_| ParseRationalError::MissingDigits(s.to_string()))?;
    let denom: BigInt = match den_part {
        None => BigInt::one(),
        Some((d, offset)) => {
            check_digits(s, d, offset)?;
            d.parse()
                .map_err(|_| ParseRationalError::MissingDigits(s.to_string()))?
        }
    };
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

fn check_digits(input: &str, digits: &str, offset: usize) -> Result<(), ParseRationalError> {
    if digits.is_empty() {
        return Err(ParseRationalError::MissingDigits(input.to_string()));
    }
    if let Some((i, ch)) = digits.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
        return Err(ParseRationalError::InvalidChar {
            input: input.to_string(),
            offset: offset + i,
            ch,
        });
    }
    Ok(())
}

/// Canonical text form: `n` for integers, `n/d` otherwise, lowest terms,
/// sign carried by the numerator.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Square root of a non-negative rational when it is itself rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}
