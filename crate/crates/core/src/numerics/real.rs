//! Irrational constants as nested dyadic brackets.
//!
//! A bracket at `B` bits is `[f/2^B, (f+1)/2^B]` with `f = floor(v·2^B)`.
//! Because the grid is dyadic, brackets at higher precision are always
//! contained in brackets at lower precision.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Anything that can enclose a fixed real value in nested rational intervals.
pub trait BracketOracle {
    /// `(lo, hi)` with `lo < v < hi` and `hi - lo <= 2^-bits`.
    fn bracket(&self, bits: u32) -> (Rational, Rational);
}

/// Irrational constants the engine can expand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealConstant {
    /// `c·π` for a positive rational `c`.
    PiMultiple(Rational),
    /// `c/π` for a positive rational `c`.
    InvPiMultiple(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionReal {
    constant: RealConstant,
}

impl PrecisionReal {
    pub fn pi() -> Self {
        PrecisionReal {
            constant: RealConstant::PiMultiple(Rational::one()),
        }
    }

    pub fn inv_pi() -> Self {
        PrecisionReal {
            constant: RealConstant::InvPiMultiple(Rational::one()),
        }
    }

    /// `c·π`; `c` must be positive so the value stays irrational.
    pub fn pi_times(c: Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidArgument(format!("pi multiple must be positive, got {c}")));
        }
        Ok(PrecisionReal {
            constant: RealConstant::PiMultiple(c),
        })
    }

    pub fn inv_pi_times(c: Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidArgument(format!("1/pi multiple must be positive, got {c}")));
        }
        Ok(PrecisionReal {
            constant: RealConstant::InvPiMultiple(c),
        })
    }

    pub fn constant(&self) -> &RealConstant {
        &self.constant
    }

    /// `floor(v · 2^bits)`, computed exactly by widening the guard digits of
    /// the π enclosure until both ends of the value's enclosure agree.
    pub fn floor_scaled(&self, bits: u32) -> BigInt {
        let mut guard = 32u32;
        loop {
            let prec = bits + guard;
            let (pi_lo, pi_hi) = pi_enclosure(prec);
            let (lo, hi) = match &self.constant {
                RealConstant::PiMultiple(c) => {
                    let den = c.denom() << (prec - bits) as usize;
                    ((c.numer() * &pi_lo).div_floor(&den), (c.numer() * &pi_hi).div_floor(&den))
                }
                RealConstant::InvPiMultiple(c) => {
                    let num = c.numer() << (prec + bits) as usize;
                    (num.div_floor(&(c.denom() * &pi_hi)), num.div_floor(&(c.denom() * &pi_lo)))
                }
            };
            if lo == hi {
                return lo;
            }
            guard *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (lo, _) = self.bracket(64);
        lo.to_f64().unwrap_or(f64::NAN)
    }
}

impl BracketOracle for PrecisionReal {
    fn bracket(&self, bits: u32) -> (Rational, Rational) {
        let f = self.floor_scaled(bits);
        let scale = BigInt::one() << bits as usize;
        let lo = Rational::new(f.clone(), scale.clone());
        let hi = Rational::new(f + 1, scale);
        (lo, hi)
    }
}

impl fmt::Display for PrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.constant {
            RealConstant::PiMultiple(c) if c.is_one() => f.write_str("pi"),
            RealConstant::PiMultiple(c) => write!(f, "{c}*pi"),
            RealConstant::InvPiMultiple(c) if c.is_one() => f.write_str("1/pi"),
            RealConstant::InvPiMultiple(c) => write!(f, "{c}/pi"),
        }
    }
}

/// Integers `(lo, hi)` with `lo < π·2^prec < hi`, from Machin's formula
/// `π = 16·atan(1/5) − 4·atan(1/239)` in fixed point.
fn pi_enclosure(prec: u32) -> (BigInt, BigInt) {
    let work = prec + 8;
    let (a5, e5) = atan_inv(5, work);
    let (a239, e239) = atan_inv(239, work);
    let approx = a5 * 16 - a239 * 4;
    let err = e5 * 16 + e239 * 4;
    let lo = (&approx - &err) >> 8usize;
    let hi = ((approx + err) >> 8usize) + 1;
    (lo, hi)
}

/// Fixed-point `atan(1/m)·2^prec` and an absolute error bound in ulps.
fn atan_inv(m: u32, prec: u32) -> (BigInt, BigInt) {
    let m2 = BigInt::from(m) * m;
    let mut power = (BigInt::one() << prec as usize) / m;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &m2;
        if power.is_zero() {
            break;
        }
        let term = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    // Each summand is off by < 3 ulps from truncation; the dropped tail is < 2.
    let err = BigInt::from(3 * k + 3);
    (sum, err)
}

/// Outcome of comparing an oracle value against a rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// The value is smaller than the rational.
    Less,
    /// The value is larger than the rational.
    Greater,
    Undecided,
}

/// Compares `v` with `x`, doubling the bracket precision from 8 bits up to
/// `max_bits` until the bracket excludes `x`.
pub fn real_compare<O: BracketOracle + ?Sized>(v: &O, x: &Rational, max_bits: u32) -> Comparison {
    let mut bits = max_bits.min(8);
    loop {
        let (lo, hi) = v.bracket(bits);
        if x <= &lo {
            return Comparison::Greater;
        }
        if x >= &hi {
            return Comparison::Less;
        }
        if bits >= max_bits {
            return Comparison::Undecided;
        }
        bits = (bits * 2).min(max_bits);
    }
}
