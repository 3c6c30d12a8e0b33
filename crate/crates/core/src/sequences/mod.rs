//! The Jacobsthal family `J_n = (s^n − (−r)^n)/(s+r)`, its dual
//! `J̃_n = (s^n − r^n)/(s−r)`, Lucas sequences, A-numbers and their
//! continuations to negative and complex indices.
//!
//! `J̃` is the linear combination `c₁t₁^n − c₂t₂^n` of the characteristic
//! roots `t₁ = s`, `t₂ = r` of its recurrence with `c₁ = c₂ = 1/(s−r)`, and
//! `J` is `J̃` with `r` replaced by `−r`. Both are Lucas sequences
//! `U_n(P, Q)`: `J̃` with `P = s+r, Q = rs` and `J` with `P = s−r, Q = −rs`.
//! The closed forms are valid for every integer `n`.

mod continuation;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{int, QuadraticSurd, Rational, Scalar};

pub use continuation::{a_continuous, a_number, a_number_complex, j_continuous, ANumberParams, ContinuationParams};

/// Integer parameters `s > r ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenJParams {
    pub r: i64,
    pub s: i64,
}

impl GenJParams {
    pub fn new(r: i64, s: i64) -> Result<Self> {
        if r < 1 || s <= r {
            return Err(Error::InvalidParams(format!("need s > r >= 1, got r={r}, s={s}")));
        }
        Ok(GenJParams { r, s })
    }

    /// `q = s + r`.
    pub fn q(&self) -> i64 {
        self.s + self.r
    }

    /// `q̃ = s − r`.
    pub fn q_tilde(&self) -> i64 {
        self.s - self.r
    }

    fn r_rat(&self) -> Rational {
        int(self.r)
    }

    fn s_rat(&self) -> Rational {
        int(self.s)
    }
}

/// Surd parameters sharing one radicand, e.g. `s, r = (1 ± √5)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdParams {
    pub r: QuadraticSurd,
    pub s: QuadraticSurd,
}

impl SurdParams {
    pub fn new(r: QuadraticSurd, s: QuadraticSurd) -> Result<Self> {
        if r == s {
            return Err(Error::DegenerateParams("s = r".into()));
        }
        r.checked_sub(&s)?;
        Ok(SurdParams { r, s })
    }

    /// `s, r = (1 ± √5)/2`.
    pub fn fibonacci() -> Self {
        let half = crate::numerics::rat(1, 2);
        SurdParams {
            s: QuadraticSurd::new(half.clone(), half.clone(), 5),
            r: QuadraticSurd::new(half.clone(), -half, 5),
        }
    }

    /// `s, r = 1 ± √2`.
    pub fn pell() -> Self {
        SurdParams {
            s: QuadraticSurd::new(int(1), int(1), 2),
            r: QuadraticSurd::new(int(1), int(-1), 2),
        }
    }
}

/// Lucas parameters `U_n = P·U_(n-1) − Q·U_(n-2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LucasParams<T> {
    pub p: T,
    pub q: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// Indices `0, 1, 2, …`.
    Forward,
    /// Indices `0, −1, −2, …`.
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    GenJ,
    GenJLike,
}

/// `(s^n − r^n)/(s − r)` for any integer `n` and any exact scalar type.
pub fn j_like_closed<T: Scalar>(r: &T, s: &T, n: i64) -> Result<T> {
    let den = s.clone() - r.clone();
    if den.is_zero() {
        return Err(Error::DegenerateParams("s = r".into()));
    }
    (s.powi(n)? - r.powi(n)?).try_div(den)
}

/// `(s^n − (−r)^n)/(s + r)`, the `r → −r` image of [`j_like_closed`].
pub fn j_closed<T: Scalar>(r: &T, s: &T, n: i64) -> Result<T> {
    j_like_closed(&-r.clone(), s, n)
}

/// Classical Jacobsthal numbers `(2^n − (−1)^n)/3`, any integer `n`.
pub fn jacobsthal(n: i64) -> Rational {
    gen_j(&GenJParams { r: 1, s: 2 }, n)
}

pub fn gen_j(p: &GenJParams, n: i64) -> Rational {
    j_closed(&p.r_rat(), &p.s_rat(), n).expect("s > r >= 1 keeps the closed form defined")
}

pub fn gen_j_like(p: &GenJParams, n: i64) -> Rational {
    j_like_closed(&p.r_rat(), &p.s_rat(), n).expect("s > r >= 1 keeps the closed form defined")
}

pub fn gen_j_like_surd(p: &SurdParams, n: i64) -> Result<QuadraticSurd> {
    j_like_closed(&p.r, &p.s, n)
}

/// `U_0 … U_(count-1)` forward, or `U_0, U_(-1), …` backward via
/// `U_(n-2) = (P·U_(n-1) − U_n)/Q`.
pub fn lucas_sequence<T: Scalar>(params: &LucasParams<T>, count: usize, direction: Direction) -> Result<Vec<T>> {
    let mut out: Vec<T> = Vec::with_capacity(count);
    match direction {
        Direction::Forward => {
            for n in 0..count {
                let next = match n {
                    0 => T::zero(),
                    1 => T::one(),
                    _ => params.p.clone() * out[n - 1].clone() - params.q.clone() * out[n - 2].clone(),
                };
                out.push(next);
            }
        }
        Direction::Backward => {
            if count > 1 && params.q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            // (U_1, U_0) seeds the first backward step.
            let mut ahead = T::one();
            for n in 0..count {
                let next = match n {
                    0 => T::zero(),
                    _ => {
                        let cur = out[n - 1].clone();
                        let prev = (params.p.clone() * cur.clone() - ahead.clone()).try_div(params.q.clone())?;
                        ahead = cur;
                        prev
                    }
                };
                out.push(next);
            }
        }
    }
    Ok(out)
}

/// `U_n(P, Q)` for `n ≥ 0`.
pub fn lucas_u<T: Scalar>(params: &LucasParams<T>, n: usize) -> T {
    lucas_sequence(params, n + 1, Direction::Forward)
        .expect("forward recurrence never divides")
        .pop()
        .expect("n + 1 >= 1 values")
}

/// Lucas parameters of `J`: `P = s − r`, `Q = −rs`.
pub fn gen_j_lucas<T: Scalar>(r: &T, s: &T) -> LucasParams<T> {
    LucasParams {
        p: s.clone() - r.clone(),
        q: -(r.clone() * s.clone()),
    }
}

/// Lucas parameters of `J̃`: `P = s + r`, `Q = rs`.
pub fn gen_j_like_lucas<T: Scalar>(r: &T, s: &T) -> LucasParams<T> {
    LucasParams {
        p: s.clone() + r.clone(),
        q: r.clone() * s.clone(),
    }
}

/// `J_n = (s−r)J_(n-1) + rs·J_(n-2)` from seeds 0, 1; backward from 0, 1/(rs).
pub fn gen_j_recurrence(p: &GenJParams, count: usize, direction: Direction) -> Vec<Rational> {
    lucas_sequence(&gen_j_lucas(&p.r_rat(), &p.s_rat()), count, direction).expect("rs != 0")
}

/// `J̃_n = (s+r)J̃_(n-1) − rs·J̃_(n-2)` from seeds 0, 1; backward from 0, −1/(rs).
pub fn gen_j_like_recurrence(p: &GenJParams, count: usize, direction: Direction) -> Vec<Rational> {
    lucas_sequence(&gen_j_like_lucas(&p.r_rat(), &p.s_rat()), count, direction).expect("rs != 0")
}

/// `J_0, J_(-1), …` from the first-order step `J_(-(n+1)) = (1/s^(n+1) − J_(-n))/r`.
pub fn gen_j_negative_first_order(p: &GenJParams, count: usize) -> Vec<Rational> {
    let (r, s) = (p.r_rat(), p.s_rat());
    let mut out = Vec::with_capacity(count);
    let mut cur = int(0);
    for n in 0..count as i64 {
        if n > 0 {
            let inv = crate::numerics::rational_powi(&s, -n).expect("s != 0");
            cur = (inv - cur) / &r;
        }
        out.push(cur.clone());
    }
    out
}

/// `J̃_0, J̃_(-1), …` from `J̃_(-(n+1)) = (1/r)·J̃_(-n) − 1/(r·s^(n+1))`.
pub fn gen_j_like_negative_first_order(p: &GenJParams, count: usize) -> Vec<Rational> {
    let (r, s) = (p.r_rat(), p.s_rat());
    let mut out = Vec::with_capacity(count);
    let mut cur = int(0);
    for n in 0..count as i64 {
        if n > 0 {
            let inv = crate::numerics::rational_powi(&s, -n).expect("s != 0");
            cur = (cur - inv) / &r;
        }
        out.push(cur.clone());
    }
    out
}

/// Taylor coefficients of `z/(1 − Pz + Qz²)` by power-series division.
pub fn gf_coefficients(kind: FamilyKind, p: &GenJParams, count: usize) -> Vec<Rational> {
    let lucas = match kind {
        FamilyKind::GenJ => gen_j_lucas(&p.r_rat(), &p.s_rat()),
        FamilyKind::GenJLike => gen_j_like_lucas(&p.r_rat(), &p.s_rat()),
    };
    let numerator = [int(0), int(1)];
    let denominator = [int(1), -lucas.p, lucas.q];
    series_quotient(&numerator, &denominator, count)
}

/// First `count` coefficients of `N(z)/D(z)`, with `D(0) ≠ 0`.
fn series_quotient(num: &[Rational], den: &[Rational], count: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    for k in 0..count {
        let mut c = num.get(k).cloned().unwrap_or_else(|| int(0));
        for j in 1..den.len().min(k + 1) {
            c -= &den[j] * &out[k - j];
        }
        out.push(c / &den[0]);
    }
    out
}

/// `J^(1/(s+1), 1/s)_n = (s^n − (−1)^n)/(s+1)`, the `r = 1` case.
pub fn choi_reduction_check(s: i64, n: i64) -> Result<Rational> {
    if s < 2 {
        return Err(Error::InvalidParams(format!("need s >= 2, got {s}")));
    }
    Ok(gen_j(&GenJParams { r: 1, s }, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rat, surd_to_rational};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn params(r: i64, s: i64) -> GenJParams {
        GenJParams::new(r, s).unwrap()
    }

    #[test]
    fn jacobsthal_values() {
        let v: Vec<_> = (0..10).map(jacobsthal).collect();
        assert_eq!(v, ints(&[0, 1, 1, 3, 5, 11, 21, 43, 85, 171]));
        assert_eq!([-1, -2, -3].map(jacobsthal), [rat(1, 2), rat(-1, 4), rat(3, 8)]);
    }

    #[test]
    fn gen_j_values() {
        let take = |r, s, k| (0..k).map(|n| gen_j(&params(r, s), n)).collect::<Vec<_>>();
        assert_eq!(take(1, 3, 8), ints(&[0, 1, 2, 7, 20, 61, 182, 547]));
        assert_eq!(take(1, 4, 6), ints(&[0, 1, 3, 13, 51, 205]));
        assert_eq!(take(2, 3, 8), ints(&[0, 1, 1, 7, 13, 55, 133, 463]));
        assert_eq!(take(3, 4, 6), ints(&[0, 1, 1, 13, 25, 181]));
        assert_eq!(gen_j(&params(1, 2), -3), rat(3, 8));
        assert_eq!(gen_j(&params(1, 3), -2), rat(-2, 9));
    }

    #[test]
    fn gen_j_like_values() {
        let p = params(1, 3);
        let v: Vec<_> = (0..9).map(|n| gen_j_like(&p, n)).collect();
        assert_eq!(v, ints(&[0, 1, 4, 13, 40, 121, 364, 1093, 3280]));
        assert_eq!([-1, -2, -3].map(|n| gen_j_like(&p, n)), [rat(-1, 3), rat(-4, 9), rat(-13, 27)]);
    }

    #[test]
    fn surd_families() {
        let fib: Vec<_> = (0..9)
            .map(|n| surd_to_rational(&gen_j_like_surd(&SurdParams::fibonacci(), n).unwrap()).unwrap())
            .collect();
        assert_eq!(fib, ints(&[0, 1, 1, 2, 3, 5, 8, 13, 21]));
        let pell: Vec<_> = (0..8)
            .map(|n| surd_to_rational(&gen_j_like_surd(&SurdParams::pell(), n).unwrap()).unwrap())
            .collect();
        assert_eq!(pell, ints(&[0, 1, 2, 5, 12, 29, 70, 169]));
        let same = QuadraticSurd::sqrt(5);
        assert!(SurdParams::new(same.clone(), same).is_err());
    }

    #[test]
    fn recurrences() {
        assert_eq!(gen_j_recurrence(&params(1, 2), 8, Direction::Forward), ints(&[0, 1, 1, 3, 5, 11, 21, 43]));
        assert_eq!(
            gen_j_recurrence(&params(1, 2), 4, Direction::Backward),
            vec![int(0), rat(1, 2), rat(-1, 4), rat(3, 8)]
        );
        assert_eq!(gen_j_recurrence(&params(2, 3), 6, Direction::Forward), ints(&[0, 1, 1, 7, 13, 55]));
        assert_eq!(gen_j_like_recurrence(&params(1, 3), 6, Direction::Forward), ints(&[0, 1, 4, 13, 40, 121]));
        assert_eq!(
            gen_j_like_recurrence(&params(1, 3), 4, Direction::Backward),
            vec![int(0), rat(-1, 3), rat(-4, 9), rat(-13, 27)]
        );
        let fib = LucasParams { p: int(1), q: int(-1) };
        assert_eq!(lucas_sequence(&fib, 8, Direction::Forward).unwrap(), ints(&[0, 1, 1, 2, 3, 5, 8, 13]));
    }

    #[test]
    fn lucas_examples() {
        let u = |p, q, k| (0..k).map(|n| lucas_u(&LucasParams { p: int(p), q: int(q) }, n)).collect::<Vec<_>>();
        assert_eq!(u(1, -1, 8), ints(&[0, 1, 1, 2, 3, 5, 8, 13]));
        assert_eq!(u(2, -1, 7), ints(&[0, 1, 2, 5, 12, 29, 70]));
        assert_eq!(u(1, -2, 7), ints(&[0, 1, 1, 3, 5, 11, 21]));
    }

    #[test]
    fn generating_functions() {
        assert_eq!(gf_coefficients(FamilyKind::GenJ, &params(1, 2), 7), ints(&[0, 1, 1, 3, 5, 11, 21]));
        assert_eq!(gf_coefficients(FamilyKind::GenJLike, &params(1, 3), 6), ints(&[0, 1, 4, 13, 40, 121]));
        assert_eq!(gf_coefficients(FamilyKind::GenJ, &params(2, 5), 1), ints(&[0]));
    }

    #[test]
    fn first_order_negative_routes() {
        for (r, s) in [(1, 2), (1, 3), (2, 3), (3, 5)] {
            let p = params(r, s);
            let closed_j: Vec<_> = (0..13).map(|n| gen_j(&p, -n)).collect();
            let closed_jl: Vec<_> = (0..13).map(|n| gen_j_like(&p, -n)).collect();
            assert_eq!(gen_j_negative_first_order(&p, 13), closed_j);
            assert_eq!(gen_j_like_negative_first_order(&p, 13), closed_jl);
        }
    }

    #[test]
    fn printed_j_like_lemma_index_is_wrong() {
        // The uncorrected form J̃_(-(n+1)) = (1/r)J̃_n − 1/(r s^(n+1)) at r=1, s=3, n=1.
        let p = params(1, 3);
        let printed = gen_j_like(&p, 1) - rat(1, 9);
        assert_eq!(printed, rat(8, 9));
        assert_eq!(gen_j_like(&p, -2), rat(-4, 9));
    }

    #[test]
    fn choi_examples() {
        assert_eq!(choi_reduction_check(2, 5).unwrap(), int(11));
        assert_eq!(choi_reduction_check(3, 3).unwrap(), int(7));
        assert_eq!(choi_reduction_check(4, 0).unwrap(), int(0));
        assert!(choi_reduction_check(1, 3).is_err());
    }
}
