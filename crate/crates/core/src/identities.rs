//! Catalan, convolution and d'Ocagne identities for both families.
//!
//! Both families are Lucas sequences `U_n(P, Q)`, with `Q = rs` for `J̃` and
//! `Q = −rs` for `J`, so each identity is written once in terms of `U` and
//! `Q`:
//!
//! - Catalan: `U_(n-m)·U_(n+m) − U_n² = −Q^(n-m)·U_m²`
//! - convolution: `U_(n+m) = U_(n+1)·U_m − Q·U_n·U_(m-1)`
//! - d'Ocagne: `U_n·U_(m+1) − U_(n+1)·U_m = Q^m·U_(n-m)`

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{int, rational_string, Rational, Scalar};
use crate::sequences::{j_closed, j_like_closed, FamilyKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityKind {
    Catalan,
    Convolution,
    #[serde(rename = "docagne")]
    DOcagne,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 3] = [IdentityKind::Catalan, IdentityKind::Convolution, IdentityKind::DOcagne];

    fn validate(self, n: i64, m: i64) -> Result<()> {
        let reason = match self {
            IdentityKind::Catalan | IdentityKind::DOcagne if !(n > m && m >= 0) => "requires n > m >= 0",
            IdentityKind::Convolution if !(n >= 0 && m >= 1) => "requires n >= 0 and m >= 1",
            _ => return Ok(()),
        };
        Err(Error::InvalidIndices { n, m, reason })
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityKind::Catalan => "catalan",
            IdentityKind::Convolution => "convolution",
            IdentityKind::DOcagne => "docagne",
        })
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "catalan" => Ok(IdentityKind::Catalan),
            "convolution" => Ok(IdentityKind::Convolution),
            "docagne" => Ok(IdentityKind::DOcagne),
            _ => Err(Error::InvalidArgument(format!("unknown identity `{text}`"))),
        }
    }
}

/// Both sides of one identity instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: IdentityKind,
    pub family: FamilyKind,
    pub r: i64,
    pub s: i64,
    pub n: i64,
    pub m: i64,
    #[serde(with = "rational_string")]
    pub lhs: Rational,
    #[serde(with = "rational_string")]
    pub rhs: Rational,
    pub holds: bool,
}

/// `(lhs, rhs)` of `kind` for the sequence `u` with Lucas parameter `q`.
pub fn identity_sides<T, F>(kind: IdentityKind, u: F, q: &T, n: i64, m: i64) -> Result<(T, T)>
where
    T: Scalar,
    F: Fn(i64) -> Result<T>,
{
    kind.validate(n, m)?;
    Ok(match kind {
        IdentityKind::Catalan => {
            let um = u(m)?;
            (
                u(n - m)? * u(n + m)? - u(n)? * u(n)?,
                -(q.powi(n - m)? * um.clone() * um),
            )
        }
        IdentityKind::Convolution => (u(n + m)?, u(n + 1)? * u(m)? - q.clone() * u(n)? * u(m - 1)?),
        IdentityKind::DOcagne => (u(n)? * u(m + 1)? - u(n + 1)? * u(m)?, q.powi(m)? * u(n - m)?),
    })
}

/// The Lucas `Q` of a family: `rs` for `J̃`, `−rs` for `J`.
pub fn family_q<T: Scalar>(family: FamilyKind, r: &T, s: &T) -> T {
    let rs = r.clone() * s.clone();
    match family {
        FamilyKind::GenJ => -rs,
        FamilyKind::GenJLike => rs,
    }
}

/// Closed-form evaluator of a family for arbitrary exact `r, s`.
pub fn family_value<T: Scalar>(family: FamilyKind, r: &T, s: &T, n: i64) -> Result<T> {
    match family {
        FamilyKind::GenJ => j_closed(r, s, n),
        FamilyKind::GenJLike => j_like_closed(r, s, n),
    }
}

pub fn identity_check(kind: IdentityKind, family: FamilyKind, r: i64, s: i64, n: i64, m: i64) -> Result<IdentityReport> {
    if r < 1 || s <= r {
        return Err(Error::InvalidParams(format!("need s > r >= 1, got r={r}, s={s}")));
    }
    let (rr, ss) = (int(r), int(s));
    let q = family_q(family, &rr, &ss);
    let (lhs, rhs) = identity_sides(kind, |k| family_value(family, &rr, &ss, k), &q, n, m)?;
    Ok(IdentityReport {
        identity: kind,
        family,
        r,
        s,
        n,
        m,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Catalan without the squares on `U_n` and `U_m`; false in general.
pub fn catalan_unsquared(family: FamilyKind, r: i64, s: i64, n: i64, m: i64) -> Result<(Rational, Rational)> {
    IdentityKind::Catalan.validate(n, m)?;
    let (rr, ss) = (int(r), int(s));
    let u = |k| family_value(family, &rr, &ss, k);
    let q = family_q(family, &rr, &ss);
    Ok((u(n - m)? * u(n + m)? - u(n)?, -(q.powi(n - m)? * u(m)?)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<IdentityReport>,
}

/// Every identity over `1 ≤ r < s ≤ s_max`, `r ≤ r_max`, `0 ≤ n, m ≤ n_max`.
/// Index pairs outside an identity's domain are counted as skipped.
pub fn identity_sweep(family: FamilyKind, r_max: i64, s_max: i64, n_max: i64) -> SweepSummary {
    let mut summary = SweepSummary::default();
    for r in 1..=r_max {
        for s in r + 1..=s_max {
            for kind in IdentityKind::ALL {
                for n in 0..=n_max {
                    for m in 0..=n_max {
                        match identity_check(kind, family, r, s, n, m) {
                            Ok(report) => {
                                summary.checked += 1;
                                if !report.holds {
                                    summary.failures.push(report);
                                }
                            }
                            Err(_) => summary.skipped += 1,
                        }
                    }
                }
            }
        }
    }
    summary
}
