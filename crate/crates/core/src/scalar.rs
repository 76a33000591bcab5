//! Scalar traits shared by the exact algebra.
//!
//! Everything in this crate is exact. [`Field`] covers the rational types the
//! polynomial and elimination code is generic over, [`LatticeInt`] the integer
//! types used by normal forms and lattice-point enumeration. Floating point
//! types deliberately implement neither.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact ordered field.
pub trait Field:
    Clone + Debug + Display + Ord + Signed + Send + Sync + 'static
{
    /// Embeds an integer, if it is representable.
    fn from_bigint(value: &BigInt) -> Option<Self>;

    fn from_i64(value: i64) -> Self;
}

/// Exact integer ring with Euclidean division.
pub trait LatticeInt:
    Clone + Debug + Display + Ord + Integer + Signed + FromPrimitive + ToPrimitive + ToBigInt + Send + Sync + 'static
{
    fn from_bigint(value: &BigInt) -> Option<Self>;
}

impl LatticeInt for i64 {
    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_i64()
    }
}

impl LatticeInt for i128 {
    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_i128()
    }
}

impl LatticeInt for BigInt {
    fn from_bigint(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }
}

impl<T: LatticeInt> Field for Ratio<T> {
    fn from_bigint(value: &BigInt) -> Option<Self> {
        <T as LatticeInt>::from_bigint(value).map(Ratio::from_integer)
    }

    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(T::from_i64(value).expect("every lattice integer type holds i64"))
    }
}

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

pub fn rat_vec(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(rat_int).collect()
}

/// Least common multiple of the coordinate denominators (1 for the empty vector).
pub fn den(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Parses `[+-]digits[/digits]` with a positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let d = BigInt::from_str(d).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            d
        }
    };
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"p/q"` or `"p"` when integral.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn floor_to_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil_to_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}
