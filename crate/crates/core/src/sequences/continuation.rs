//! A-numbers and the complex-index continuations of `J̃` and `𝒜`.
//!
//! Non-integer powers use the principal branch, and `(−1)^λ` is `exp(iπλ)`.
//! Integer exponents go through repeated multiplication so that integer
//! indices reproduce the exact sequences up to rounding.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ComplexPair, Scalar};

/// `𝒜_n = (a·s^n + (−1)^n·b·t^n)/(s + t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ANumberParams<T> {
    pub a: T,
    pub b: T,
    pub s: T,
    pub t: T,
}

/// Parameters of `j_λ^(μ,ν) = (ν^λ − μ^λ)/(ν − μ)`; `gamma` is only used by
/// callers that pair `ν` with a second base.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuationParams {
    pub mu: ComplexPair,
    pub nu: ComplexPair,
    pub lambda: ComplexPair,
    pub gamma: Option<ComplexPair>,
}

/// Exact A-number for a non-negative index.
pub fn a_number<T: Scalar>(p: &ANumberParams<T>, n: u32) -> Result<T> {
    let den = p.s.clone() + p.t.clone();
    if den.is_zero() {
        return Err(Error::DegenerateParams("s + t = 0".into()));
    }
    let n = n as i64;
    let sign = if n % 2 == 0 { T::one() } else { -T::one() };
    let num = p.a.clone() * p.s.powi(n)? + sign * p.b.clone() * p.t.powi(n)?;
    num.try_div(den)
}

/// Floating A-number for a non-negative index.
pub fn a_number_complex(p: &ANumberParams<ComplexPair>, n: u32) -> Result<ComplexPair> {
    a_continuous(p, ComplexPair::real(n as f64)?)
}

/// `(a·ν^λ + (−1)^λ·b·γ^λ)/(ν + γ)` with `ν = p.s`, `γ = p.t`.
pub fn a_continuous(p: &ANumberParams<ComplexPair>, lambda: ComplexPair) -> Result<ComplexPair> {
    let (a, b) = (p.a.to_complex(), p.b.to_complex());
    let (nu, gamma) = (p.s.to_complex(), p.t.to_complex());
    let den = nu + gamma;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateParams("nu + gamma = 0".into()));
    }
    let lam = lambda.to_complex();
    let num = a * cpow(nu, lam)? + minus_one_pow(lam) * b * cpow(gamma, lam)?;
    ComplexPair::from_complex(num / den)
}

/// `(ν^λ − μ^λ)/(ν − μ)`.
pub fn j_continuous(p: &ContinuationParams) -> Result<ComplexPair> {
    let (mu, nu, lam) = (p.mu.to_complex(), p.nu.to_complex(), p.lambda.to_complex());
    if mu == nu {
        return Err(Error::DegenerateParams("nu = mu".into()));
    }
    ComplexPair::from_complex((cpow(nu, lam)? - cpow(mu, lam)?) / (nu - mu))
}

fn as_integer(z: Complex64) -> Option<i32> {
    let integral = z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() <= i32::MAX as f64;
    integral.then_some(z.re as i32)
}

fn cpow(base: Complex64, exp: Complex64) -> Result<Complex64> {
    let zero = base == Complex64::new(0.0, 0.0);
    match as_integer(exp) {
        Some(k) if zero && k < 0 => Err(Error::BranchUndefined(format!("0^{k}"))),
        Some(k) => Ok(base.powi(k)),
        None if zero => Err(Error::BranchUndefined(format!("0^({exp})"))),
        None => Ok(base.powc(exp)),
    }
}

/// `exp(iπλ)`, exactly `±1` at integers.
fn minus_one_pow(lambda: Complex64) -> Complex64 {
    match as_integer(lambda) {
        Some(k) if k % 2 == 0 => Complex64::new(1.0, 0.0),
        Some(_) => Complex64::new(-1.0, 0.0),
        None => (Complex64::i() * PI * lambda).exp(),
    }
}
