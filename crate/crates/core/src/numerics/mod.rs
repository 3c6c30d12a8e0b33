//! Number types shared by every other module.
//!
//! [`Rational`] is the exact value type for expansions and integer sequences.
//! [`QuadraticSurd`] carries the Fibonacci and Pell closed forms exactly,
//! [`ComplexPair`] is the floating-point carrier for complex continuations, and
//! [`PrecisionReal`] wraps irrational targets behind a nested-bracket oracle.

mod complex;
mod real;
mod surd;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use complex::ComplexPair;
pub use real::{real_compare, BracketOracle, Comparison, PrecisionReal, RealConstant};
pub use surd::{surd_pow, surd_to_rational, QuadraticSurd};

/// Arbitrary-precision fraction, always reduced with a positive denominator.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-1/4"`, `" 10/6 "` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: `{text}`"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// `base^exp` for any signed exponent. Fails only for `0^negative`.
pub fn rational_powi(base: &Rational, exp: i64) -> Result<Rational> {
    let p = pow_nonneg(base, exp.unsigned_abs());
    if exp >= 0 {
        Ok(p)
    } else if p.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(p.recip())
    }
}

fn pow_nonneg(base: &Rational, mut exp: u64) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Serde adapter writing a [`Rational`] as its `"num/den"` display string.
pub mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(de)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    /// The same encoding for a list of rationals.
    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        use super::super::{parse_rational, Rational};

        pub fn serialize<S: Serializer>(values: &[Rational], ser: S) -> Result<S::Ok, S::Error> {
            let mut seq = ser.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(de)?
                .iter()
                .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

pub(crate) fn sign_of(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact field operations shared by [`Rational`] and [`QuadraticSurd`], so the
/// sequence closed forms and recurrences are written once.
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + std::fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_i64(n: i64) -> Self;
    fn try_div(self, rhs: Self) -> Result<Self>;

    fn powi(&self, exp: i64) -> Result<Self> {
        let mut acc = Self::one();
        let mut sq = self.clone();
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        if exp >= 0 {
            Ok(acc)
        } else {
            Self::one().try_div(acc)
        }
    }
}

impl Scalar for Rational {
    fn from_i64(n: i64) -> Self {
        int(n)
    }
    fn try_div(self, rhs: Self) -> Result<Self> {
        if rhs.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }
    fn powi(&self, exp: i64) -> Result<Self> {
        rational_powi(self, exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_after_operations() {
        let a = rat(6, -8);
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(4));
        let sum = rat(1, 6) + rat(1, 3);
        assert_eq!(sum, rat(1, 2));
        assert_eq!(sum.denom(), &BigInt::from(2));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_rational("10/6").unwrap(), rat(5, 3));
        assert_eq!(parse_rational(" -1/4 ").unwrap().to_string(), "-1/4");
        assert_eq!(parse_rational("7").unwrap().to_string(), "7");
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rational("1/x").is_err());
    }

    #[test]
    fn signed_powers() {
        assert_eq!(rational_powi(&rat(-1, 2), 3).unwrap(), rat(-1, 8));
        assert_eq!(rational_powi(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert_eq!(rational_powi(&int(0), 0).unwrap(), int(1));
        assert!(rational_powi(&int(0), -1).is_err());
    }
}
