//! Greedy signed expansion of a target in powers of `r/s`.
//!
//! The n-th correction has magnitude `r^(n-1)/s^n` and the sign of
//! `target − X_(n-1)`. The magnitudes of all corrections after step `n` sum
//! to `tail(n) = r^n / (s^n·(s−r))`, which is the convergence guard: if the
//! distance to the target ever exceeds the tail, the remaining ladder can
//! never reach it.

mod regroup;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{int, rat, real_compare, sign_of, BracketOracle, Comparison, PrecisionReal, Rational};

pub use regroup::{regroup, GroupedSeries};

/// The expansion base `r/s < 1`, reduced on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExpansionRatio {
    r: u64,
    s: u64,
}

impl ExpansionRatio {
    pub fn new(r: u64, s: u64) -> Result<Self> {
        if r == 0 || s <= r {
            return Err(Error::InvalidParams(format!("ratio {r}/{s} needs s > r >= 1")));
        }
        let g = r.gcd(&s);
        Ok(ExpansionRatio { r: r / g, s: s / g })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// The iterative weight `r : (s − r)`; `1/2` is `1:1`, `2/3` is `2:1`.
    pub fn weight(&self) -> (u64, u64) {
        (self.r, self.s - self.r)
    }

    pub fn value(&self) -> Rational {
        rat(self.r as i64, self.s as i64)
    }

    fn r_big(&self) -> Rational {
        int(self.r as i64)
    }

    fn s_big(&self) -> Rational {
        int(self.s as i64)
    }
}

impl fmt::Display for ExpansionRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.r, self.s)
    }
}

impl std::str::FromStr for ExpansionRatio {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("ratio must look like R/S, got `{text}`"));
        let (r, s) = text.trim().split_once('/').ok_or_else(bad)?;
        let r: u64 = r.trim().parse().map_err(|_| bad())?;
        let s: u64 = s.trim().parse().map_err(|_| bad())?;
        Self::new(r, s)
    }
}

/// `r^(n-1)/s^n`, the magnitude of the n-th correction. `n` starts at 1.
pub fn term_magnitude(ratio: &ExpansionRatio, n: u32) -> Rational {
    assert!(n >= 1, "corrections are numbered from 1");
    let num = num_traits::pow(ratio.r_big(), (n - 1) as usize);
    num / num_traits::pow(ratio.s_big(), n as usize)
}

/// `tail(n) = r^n / (s^n·(s−r))`, the total magnitude of every correction after `n`.
pub fn error_bound(ratio: &ExpansionRatio, n: u32) -> Rational {
    let rho = num_traits::pow(ratio.value(), n as usize);
    rho / int((ratio.s - ratio.r) as i64)
}

/// `X_n = (1 − (−r/s)^n)/(s + r)`, the n-th partial sum for the target `1/(r+s)`.
pub fn closed_form_partial(ratio: &ExpansionRatio, n: u32) -> Rational {
    let neg_rho = -ratio.value();
    (Rational::one() - num_traits::pow(neg_rho, n as usize)) / int((ratio.s + ratio.r) as i64)
}

/// What is being expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Exact(Rational),
    Real(PrecisionReal),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Exact(v) => write!(f, "{v}"),
            Target::Real(v) => write!(f, "{v}"),
        }
    }
}

/// Where the zero approximation `X_0` sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum X0Policy {
    AtZero,
    AtOne,
    /// Position of the larger mass group: 0 when the target is at most 1/2, else 1.
    LargerGroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn apply(self, x: Rational) -> Rational {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

/// A (possibly truncated) signed series `X_0 ± m_1 ± m_2 ± …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub target: Target,
    pub x0: Rational,
    pub ratio: ExpansionRatio,
    /// `signs[k]` is `S(k+1)`, the sign of correction `k + 1`.
    pub signs: Vec<Sign>,
    /// `partial_sums[n] = X_n`; `partial_sums[0] = x0`.
    pub partial_sums: Vec<Rational>,
    /// Set when some `X_n` hit an exact target.
    pub terminated: bool,
    pub terms_requested: usize,
}

impl Expansion {
    /// Number of corrections actually emitted.
    pub fn terms(&self) -> usize {
        self.signs.len()
    }

    /// Signed n-th correction, `n >= 1`.
    pub fn term(&self, n: usize) -> Rational {
        self.signs[n - 1].apply(term_magnitude(&self.ratio, n as u32))
    }

    pub fn last(&self) -> &Rational {
        self.partial_sums.last().expect("partial sums always contain X_0")
    }

    /// Error bound for the final partial sum (zero when terminated).
    pub fn final_error_bound(&self) -> Rational {
        if self.terminated {
            Rational::zero()
        } else {
            error_bound(&self.ratio, self.terms() as u32)
        }
    }

    /// `X_k`, extended past a terminated expansion by its (exact) final value.
    pub fn partial_sum(&self, k: usize) -> Option<&Rational> {
        match self.partial_sums.get(k) {
            Some(x) => Some(x),
            None if self.terminated => Some(self.last()),
            None => None,
        }
    }
}

/// Runs the greedy expansion for up to `max_terms` corrections.
///
/// Real targets are compared through their bracket oracle, doubling the
/// precision up to `max_bits`.
pub fn expand(
    target: &Target,
    ratio: &ExpansionRatio,
    x0_policy: X0Policy,
    max_terms: usize,
    max_bits: u32,
) -> Result<Expansion> {
    let probe = Probe { target, max_bits };
    probe.check_range()?;

    let x0 = match x0_policy {
        X0Policy::AtZero => Rational::zero(),
        X0Policy::AtOne => Rational::one(),
        X0Policy::LargerGroup => match probe.sign_of_difference(&rat(1, 2), 0)? {
            1 => Rational::one(),
            _ => Rational::zero(),
        },
    };

    let mut e = Expansion {
        target: target.clone(),
        x0: x0.clone(),
        ratio: *ratio,
        signs: Vec::with_capacity(max_terms),
        partial_sums: vec![x0],
        terminated: false,
        terms_requested: max_terms,
    };

    for n in 1..=max_terms {
        let prev = e.last().clone();
        probe.check_reach(&prev, ratio, n - 1)?;
        let sign = match probe.sign_of_difference(&prev, n)? {
            0 => {
                e.terminated = true;
                return Ok(e);
            }
            1 => Sign::Plus,
            _ => Sign::Minus,
        };
        let next = prev + sign.apply(term_magnitude(ratio, n as u32));
        e.signs.push(sign);
        e.partial_sums.push(next);
    }
    let last = e.last().clone();
    if probe.sign_of_difference(&last, max_terms)? == 0 {
        e.terminated = true;
    } else {
        probe.check_reach(&last, ratio, max_terms)?;
    }
    Ok(e)
}

struct Probe<'a> {
    target: &'a Target,
    max_bits: u32,
}

impl Probe<'_> {
    /// Sign of `target − x`; 0 only for exact targets.
    fn sign_of_difference(&self, x: &Rational, step: usize) -> Result<i32> {
        match self.target {
            Target::Exact(v) => Ok(sign_of(&(v - x))),
            Target::Real(v) => match real_compare(v, x, self.max_bits) {
                Comparison::Greater => Ok(1),
                Comparison::Less => Ok(-1),
                Comparison::Undecided => Err(Error::PrecisionExhausted { step, bits: self.max_bits }),
            },
        }
    }

    fn check_range(&self) -> Result<()> {
        let below_zero = self.sign_of_difference(&Rational::zero(), 0)? < 0;
        let above_one = self.sign_of_difference(&Rational::one(), 0)? > 0;
        if below_zero || above_one {
            return Err(Error::InvalidTarget(format!("{} is outside [0, 1]", self.target)));
        }
        Ok(())
    }

    /// Fails with `NonConvergent` when `|target − x| > tail(n)`.
    fn check_reach(&self, x: &Rational, ratio: &ExpansionRatio, n: usize) -> Result<()> {
        let tail = error_bound(ratio, n as u32);
        let reachable = match self.target {
            Target::Exact(v) => (v - x).abs() <= tail,
            Target::Real(_) => {
                self.sign_of_difference(&(x + &tail), n)? < 0 && self.sign_of_difference(&(x - &tail), n)? > 0
            }
        };
        if reachable {
            Ok(())
        } else {
            Err(Error::NonConvergent { step: n })
        }
    }
}

/// Exposes a real target's bracket for callers that only hold a [`Target`].
impl BracketOracle for Target {
    fn bracket(&self, bits: u32) -> (Rational, Rational) {
        match self {
            Target::Exact(v) => {
                let eps = Rational::new(1.into(), num_bigint::BigInt::one() << (bits as usize + 1));
                (v - &eps, v + eps)
            }
            Target::Real(v) => v.bracket(bits),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(r: u64, s: u64) -> ExpansionRatio {
        ExpansionRatio::new(r, s).unwrap()
    }

    fn exact(n: i64, d: i64) -> Target {
        Target::Exact(rat(n, d))
    }

    #[test]
    fn ratio_is_normalized() {
        let r = ratio(2, 4);
        assert_eq!((r.r(), r.s()), (1, 2));
        assert_eq!(ratio(2, 3).weight(), (2, 1));
        assert!(ExpansionRatio::new(3, 3).is_err());
        assert!(ExpansionRatio::new(0, 3).is_err());
        assert_eq!("3/4".parse::<ExpansionRatio>().unwrap(), ratio(3, 4));
        assert!("3:4".parse::<ExpansionRatio>().is_err());
    }

    #[test]
    fn term_magnitudes() {
        assert_eq!(term_magnitude(&ratio(1, 2), 3), rat(1, 8));
        assert_eq!(term_magnitude(&ratio(2, 3), 1), rat(1, 3));
        assert_eq!(term_magnitude(&ratio(3, 4), 2), rat(3, 16));
    }

    #[test]
    fn error_bounds() {
        assert_eq!(error_bound(&ratio(1, 2), 0), int(1));
        assert_eq!(error_bound(&ratio(1, 2), 5), rat(1, 32));
        assert_eq!(error_bound(&ratio(2, 3), 2), rat(4, 9));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_partial(&ratio(1, 2), 4), rat(5, 16));
        assert_eq!(closed_form_partial(&ratio(1, 2), 0), int(0));
        assert_eq!(closed_form_partial(&ratio(2, 3), 3), rat(7, 27));
    }

    #[test]
    fn one_third_alternates() {
        let e = expand(&exact(1, 3), &ratio(1, 2), X0Policy::AtZero, 4, 64).unwrap();
        assert_eq!(e.signs, vec![Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus]);
        assert_eq!(e.partial_sums, vec![int(0), rat(1, 2), rat(1, 4), rat(3, 8), rat(5, 16)]);
        assert!(!e.terminated);
        assert_eq!(e.term(2), rat(-1, 4));
    }

    #[test]
    fn one_quarter_terminates() {
        let e = expand(&exact(1, 4), &ratio(1, 2), X0Policy::AtZero, 10, 64).unwrap();
        assert_eq!(e.partial_sums, vec![int(0), rat(1, 2), rat(1, 4)]);
        assert!(e.terminated);
        assert_eq!(e.terms(), 2);
        assert_eq!(e.terms_requested, 10);
        assert_eq!(e.final_error_bound(), int(0));
    }

    #[test]
    fn terminates_when_last_requested_term_hits() {
        let e = expand(&exact(1, 4), &ratio(1, 2), X0Policy::AtZero, 2, 64).unwrap();
        assert!(e.terminated);
        let e = expand(&exact(0, 1), &ratio(1, 2), X0Policy::AtZero, 5, 64).unwrap();
        assert!(e.terminated);
        assert_eq!(e.terms(), 0);
    }

    #[test]
    fn one_seventh_listing() {
        let e = expand(&exact(1, 7), &ratio(1, 2), X0Policy::AtZero, 7, 64).unwrap();
        let expect = [(0, 1), (1, 2), (1, 4), (1, 8), (3, 16), (5, 32), (9, 64), (19, 128)];
        let expect: Vec<_> = expect.iter().map(|&(n, d)| rat(n, d)).collect();
        assert_eq!(e.partial_sums, expect);
    }

    #[test]
    fn non_convergent_when_tail_too_short() {
        // From 1/3 the 1/3-ladder can only descend 1/6 more, not enough for 1/7.
        let err = expand(&exact(1, 7), &ratio(1, 3), X0Policy::AtZero, 12, 64).unwrap_err();
        assert_eq!(err, Error::NonConvergent { step: 1 });
        let err = expand(&exact(0, 1), &ratio(1, 3), X0Policy::AtOne, 3, 64).unwrap_err();
        assert_eq!(err, Error::NonConvergent { step: 0 });
    }

    #[test]
    fn larger_group_policy() {
        let e = expand(&exact(3, 4), &ratio(1, 2), X0Policy::LargerGroup, 1, 64).unwrap();
        assert_eq!(e.x0, int(1));
        let e = expand(&exact(1, 2), &ratio(1, 2), X0Policy::LargerGroup, 1, 64).unwrap();
        assert_eq!(e.x0, int(0));
    }

    #[test]
    fn rejects_out_of_range_targets() {
        assert!(matches!(
            expand(&exact(5, 3), &ratio(1, 2), X0Policy::AtZero, 3, 64),
            Err(Error::InvalidTarget(_))
        ));
        let pi = Target::Real(PrecisionReal::pi());
        assert!(matches!(expand(&pi, &ratio(1, 2), X0Policy::AtZero, 3, 64), Err(Error::InvalidTarget(_))));
    }

    #[test]
    fn real_targets() {
        let inv_pi = Target::Real(PrecisionReal::inv_pi());
        let e = expand(&inv_pi, &ratio(1, 2), X0Policy::AtZero, 9, 256).unwrap();
        assert_eq!(e.last(), &rat(163, 512));

        let quarter_pi = Target::Real(PrecisionReal::pi_times(rat(1, 4)).unwrap());
        let e = expand(&quarter_pi, &ratio(1, 2), X0Policy::AtOne, 5, 256).unwrap();
        let expect: Vec<_> = [(1, 1), (1, 2), (3, 4), (7, 8), (13, 16), (25, 32)]
            .iter()
            .map(|&(n, d)| rat(n, d))
            .collect();
        assert_eq!(e.partial_sums, expect);
    }

    #[test]
    fn precision_exhaustion_is_reported() {
        // 8 bits cannot separate 1/pi from its own 8-bit grid neighbours for long.
        let inv_pi = Target::Real(PrecisionReal::inv_pi());
        let err = expand(&inv_pi, &ratio(1, 2), X0Policy::AtZero, 40, 8).unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted { bits: 8, .. }));
    }
}
