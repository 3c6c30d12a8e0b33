use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{parse_rational, Rational, Scalar};
use crate::error::{Error, Result};

/// Exact `a + b·√d` over the rationals, `d` square-free.
///
/// Rational values are stored with `b = 0` and `d = 0`, which makes derived
/// equality canonical. A rational surd combines with any radicand; two
/// irrational surds must share `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadraticSurd {
    /// Builds `a + b·√d`, pulling square factors out of `d` (√8 → 2√2).
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        let (mult, d) = square_free_part(d);
        let b = b * Rational::from_integer(mult.into());
        match d {
            0 => Self::rational(a),
            1 => Self::rational(a + b),
            _ if b.is_zero() => Self::rational(a),
            _ => QuadraticSurd { a, b, d },
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadraticSurd {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    /// `√d`, normalized.
    pub fn sqrt(d: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Square-free radicand; 0 for rational values.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// `a² − d·b²`; zero only for the zero surd.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.into())
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    fn common_d(&self, rhs: &Self) -> Result<u64> {
        match (self.is_rational(), rhs.is_rational()) {
            (true, _) => Ok(rhs.d),
            (_, true) => Ok(self.d),
            _ if self.d == rhs.d => Ok(self.d),
            _ => Err(Error::RadicandMismatch(self.d, rhs.d)),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let d = self.common_d(rhs)?;
        Ok(Self::new(&self.a + &rhs.a, &self.b + &rhs.b, d))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&-rhs.clone())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let d = self.common_d(rhs)?;
        let dr = Rational::from_integer(d.into());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(Self::new(a, b, d))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.common_d(rhs)?;
        if rhs.is_rational() {
            if rhs.a.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::new(&self.a / &rhs.a, &self.b / &rhs.a, self.d));
        }
        // Multiply through by the conjugate; the norm is a nonzero rational.
        let norm = rhs.norm();
        let num = self.checked_mul(&rhs.conjugate())?;
        Ok(Self::new(num.a / &norm, num.b / norm, num.d))
    }
}

fn square_free_part(mut d: u64) -> (u64, u64) {
    let mut mult = 1u64;
    let mut k = 2u64;
    while k.saturating_mul(k) <= d {
        while d.is_multiple_of(k * k) {
            d /= k * k;
            mult *= k;
        }
        k += 1;
    }
    (mult, d)
}

/// Exact `x^n`; `x^0 = 1`.
pub fn surd_pow(x: &QuadraticSurd, n: u32) -> QuadraticSurd {
    x.powi(n as i64).expect("non-negative powers never divide")
}

/// Returns `a` when the surd part vanishes.
pub fn surd_to_rational(x: &QuadraticSurd) -> Result<Rational> {
    if x.is_rational() {
        Ok(x.a.clone())
    } else {
        Err(Error::NotRational(x.to_string()))
    }
}

impl From<Rational> for QuadraticSurd {
    fn from(a: Rational) -> Self {
        Self::rational(a)
    }
}

impl From<i64> for QuadraticSurd {
    fn from(n: i64) -> Self {
        Self::rational(super::int(n))
    }
}

impl Add for QuadraticSurd {
    type Output = QuadraticSurd;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for QuadraticSurd {
    type Output = QuadraticSurd;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for QuadraticSurd {
    type Output = QuadraticSurd;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> Self {
        QuadraticSurd {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Zero for QuadraticSurd {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadraticSurd {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Scalar for QuadraticSurd {
    fn from_i64(n: i64) -> Self {
        n.into()
    }
    fn try_div(self, rhs: Self) -> Result<Self> {
        self.checked_div(&rhs)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let has_a = !self.a.is_zero();
        if has_a {
            write!(f, "{}", self.a)?;
        }
        if self.b.is_negative() {
            f.write_str("-")?;
        } else if has_a {
            f.write_str("+")?;
        }
        let mag = self.b.abs();
        if mag.is_one() {
            write!(f, "sqrt({})", self.d)
        } else {
            write!(f, "{}*sqrt({})", mag, self.d)
        }
    }
}

/// Grammar: `term (('+'|'-') term)*` with a leading sign allowed, where
/// `term := RATIONAL | RATIONAL '*' 'sqrt(' INT ')' | 'sqrt(' INT ')'`.
/// Accepts everything [`Display`](fmt::Display) produces, e.g. `1/2-1/2*sqrt(5)`.
impl FromStr for QuadraticSurd {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::InvalidArgument(format!("bad surd `{text}`: {msg}"));
        if s.is_empty() {
            return Err(bad("empty"));
        }
        // Split into signed terms at top-level '+'/'-' (none are nested).
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut negative = false;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            negative = bytes[0] == b'-';
            start = 1;
        }
        let mut i = start;
        while i < bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && i > start {
                terms.push((negative, &s[start..i]));
                negative = bytes[i] == b'-';
                start = i + 1;
            }
            i += 1;
        }
        terms.push((negative, &s[start..]));

        let mut acc = QuadraticSurd::zero();
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let value = parse_term(term).ok_or_else(|| bad("unrecognized term"))?;
            let value = if neg { -value } else { value };
            acc = acc.checked_add(&value)?;
        }
        Ok(acc)
    }
}

fn parse_term(term: &str) -> Option<QuadraticSurd> {
    let (coef, rest) = match term.find("sqrt(") {
        None => return parse_rational(term).ok().map(QuadraticSurd::rational),
        Some(0) => (Rational::one(), term),
        Some(pos) => {
            let c = term[..pos].strip_suffix('*')?;
            (parse_rational(c).ok()?, &term[pos..])
        }
    };
    let inner = rest.strip_prefix("sqrt(")?.strip_suffix(')')?;
    let d: u64 = inner.parse().ok()?;
    Some(QuadraticSurd::new(Rational::zero(), coef, d))
}
