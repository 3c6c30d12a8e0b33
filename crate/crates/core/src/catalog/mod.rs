//! Known sequence prefixes and their recomputation.
//!
//! Every entry names a generator ([`SequenceSpec`]) and the values it must
//! reproduce from `offset` onward. Exact generators are compared with
//! rational equality; `j-continuous` is evaluated in floating point and
//! compared with a relative tolerance of `1e-9`.

mod bfile;

use std::path::Path;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cli::parse_target;
use crate::engine::{expand, regroup, ExpansionRatio, X0Policy};
use crate::error::{Error, Result};
use crate::numerics::{int, parse_rational, rational_powi, rational_string, ComplexPair, QuadraticSurd, Rational};
use crate::sequences::{
    a_number, j_closed, j_continuous, j_like_closed, lucas_sequence, ANumberParams, ContinuationParams, Direction,
    LucasParams,
};

pub use bfile::{format_bfile, load_bfile, parse_bfile, write_bfile};

/// Relative tolerance for floating-point generators.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

const BUILTIN: &str = include_str!("../../data/catalog.json");

/// How a sequence is generated. Numeric parameters are strings so that
/// rationals and surds such as `1/2+1/2*sqrt(5)` survive JSON unchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum SequenceSpec {
    /// `(s^n − (−r)^n)/(s + r)`.
    GenJ { r: String, s: String },
    /// `(s^n − r^n)/(s − r)`.
    GenJLike { r: String, s: String },
    /// `U_n(P, Q)`; negative indices run the recurrence backward.
    Lucas { p: String, q: String },
    /// `(a·s^n + (−1)^n·b·t^n)/(s + t)`, `n ≥ 0`.
    ANumber { a: String, b: String, s: String, t: String },
    /// `(ν^n − μ^n)/(ν − μ)` in floating point.
    JContinuous { mu: String, nu: String },
    /// Scaled partial sums of an expansion.
    EnginePartialSums(EngineSpec),
    /// Values without a generator; cannot be verified.
    Custom,
}

/// `value_i = factor · base^k · X_k` with `k = start + stride·i`, where `X`
/// are the partial sums (or block sums when `regroup` is set) and `base` is
/// `s` (or `s^block`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineSpec {
    pub target: String,
    pub ratio: String,
    #[serde(default = "default_x0")]
    pub x0: String,
    #[serde(default = "one_usize")]
    pub stride: usize,
    #[serde(default)]
    pub start: usize,
    #[serde(default = "default_factor")]
    pub factor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regroup: Option<usize>,
    #[serde(default = "default_bits")]
    pub bits: u32,
}

fn default_x0() -> String {
    "larger".into()
}

fn one_usize() -> usize {
    1
}

fn default_factor() -> String {
    "1".into()
}

fn default_bits() -> u32 {
    256
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Transcribed from a published listing.
    Published,
    BFile,
    /// Computed from a closed form, not transcribed.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    #[serde(flatten)]
    pub spec: SequenceSpec,
    pub offset: i64,
    #[serde(with = "rational_string::vec")]
    pub values: Vec<Rational>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Sequence index, i.e. `offset + position`.
    pub index: i64,
    #[serde(with = "rational_string")]
    pub expected: Rational,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub length: usize,
    pub matched_count: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// A recomputed value.
#[derive(Clone, Debug, PartialEq)]
pub enum Computed {
    Exact(QuadraticSurd),
    Approx(ComplexPair),
}

impl Computed {
    pub fn matches(&self, expected: &Rational) -> bool {
        match self {
            Computed::Exact(v) => v == &QuadraticSurd::rational(expected.clone()),
            Computed::Approx(z) => {
                let e = expected.to_f64().unwrap_or(f64::NAN);
                let scale = e.abs().max(1.0);
                (z.re() - e).abs() <= FLOAT_TOLERANCE * scale && z.im().abs() <= FLOAT_TOLERANCE * scale
            }
        }
    }
}

impl std::fmt::Display for Computed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Computed::Exact(v) => write!(f, "{v}"),
            Computed::Approx(z) => write!(f, "{z}"),
        }
    }
}

/// Parses a catalog document.
pub fn parse_catalog(json: &str) -> Result<Vec<CatalogEntry>> {
    let catalog: Catalog = serde_json::from_str(json).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    for entry in &catalog.entries {
        if entry.values.is_empty() {
            return Err(Error::InvalidArgument(format!("entry {} has no values", entry.id)));
        }
    }
    Ok(catalog.entries)
}

pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    parse_catalog(&std::fs::read_to_string(path)?)
}

/// The embedded catalog of every sequence this crate reproduces.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    parse_catalog(BUILTIN).expect("embedded catalog is well formed")
}

fn surd(text: &str) -> Result<QuadraticSurd> {
    text.parse()
}

/// Values of `spec` at `offset, offset + 1, …` (`count` of them).
pub fn compute_values(spec: &SequenceSpec, offset: i64, count: usize) -> Result<Vec<Computed>> {
    let indices = offset..offset + count as i64;
    let exact = |v: Vec<QuadraticSurd>| v.into_iter().map(Computed::Exact).collect();
    Ok(match spec {
        SequenceSpec::GenJ { r, s } => {
            let (r, s) = (surd(r)?, surd(s)?);
            r.checked_add(&s)?;
            exact(indices.map(|n| j_closed(&r, &s, n)).collect::<Result<_>>()?)
        }
        SequenceSpec::GenJLike { r, s } => {
            let (r, s) = (surd(r)?, surd(s)?);
            r.checked_sub(&s)?;
            exact(indices.map(|n| j_like_closed(&r, &s, n)).collect::<Result<_>>()?)
        }
        SequenceSpec::Lucas { p, q } => {
            let params = LucasParams { p: surd(p)?, q: surd(q)? };
            params.p.checked_add(&params.q)?;
            let forward = lucas_sequence(&params, (offset + count as i64).max(0) as usize, Direction::Forward)?;
            let backward = lucas_sequence(&params, (1 - offset).max(0) as usize, Direction::Backward)?;
            exact(
                indices
                    .map(|n| if n >= 0 { forward[n as usize].clone() } else { backward[(-n) as usize].clone() })
                    .collect(),
            )
        }
        SequenceSpec::ANumber { a, b, s, t } => {
            if offset < 0 {
                return Err(Error::InvalidParams("A-numbers are defined for n >= 0".into()));
            }
            let p = ANumberParams {
                a: surd(a)?,
                b: surd(b)?,
                s: surd(s)?,
                t: surd(t)?,
            };
            for x in [&p.b, &p.s, &p.t] {
                p.a.checked_add(x)?;
            }
            exact(indices.map(|n| a_number(&p, n as u32)).collect::<Result<_>>()?)
        }
        SequenceSpec::JContinuous { mu, nu } => {
            let (mu, nu): (ComplexPair, ComplexPair) = (mu.parse()?, nu.parse()?);
            indices
                .map(|n| {
                    let p = ContinuationParams {
                        mu,
                        nu,
                        lambda: ComplexPair::real(n as f64)?,
                        gamma: None,
                    };
                    j_continuous(&p).map(Computed::Approx)
                })
                .collect::<Result<_>>()?
        }
        SequenceSpec::EnginePartialSums(e) => {
            if offset < 0 {
                return Err(Error::InvalidParams("partial sums start at index 0".into()));
            }
            engine_values(e, count)?
                .into_iter()
                .map(|v| Computed::Exact(QuadraticSurd::rational(v)))
                .collect()
        }
        SequenceSpec::Custom => return Err(Error::UnknownFamily("custom".into())),
    })
}

fn engine_values(e: &EngineSpec, count: usize) -> Result<Vec<Rational>> {
    let target = parse_target(&e.target)?.to_target()?;
    let ratio: ExpansionRatio = e.ratio.parse()?;
    let x0 = match e.x0.as_str() {
        "zero" => X0Policy::AtZero,
        "one" => X0Policy::AtOne,
        "larger" => X0Policy::LargerGroup,
        other => return Err(Error::InvalidArgument(format!("unknown x0 policy `{other}`"))),
    };
    let factor = parse_rational(&e.factor)?;
    if e.stride == 0 {
        return Err(Error::InvalidArgument("stride must be positive".into()));
    }
    let last_k = e.start + e.stride * count.saturating_sub(1);
    let block = e.regroup.unwrap_or(1);
    let expansion = expand(&target, &ratio, x0, last_k * block, e.bits)?;
    let sums: Vec<Rational> = match e.regroup {
        Some(b) => regroup(&expansion, b)?.partial_sums,
        None => (0..=last_k)
            .map(|k| expansion.partial_sum(k).cloned().unwrap_or_else(Rational::zero))
            .collect(),
    };
    let base = rational_powi(&int(ratio.s() as i64), block as i64)?;
    (0..count)
        .map(|i| {
            let k = e.start + e.stride * i;
            let x = sums.get(k).ok_or(Error::InsufficientTerms {
                needed: k,
                available: sums.len().saturating_sub(1),
            })?;
            Ok(&factor * rational_powi(&base, k as i64)? * x)
        })
        .collect()
}

/// Recomputes every value of `entry` and reports the first disagreement.
pub fn verify_entry(entry: &CatalogEntry) -> Result<VerificationReport> {
    let computed = compute_values(&entry.spec, entry.offset, entry.values.len())?;
    let mut report = VerificationReport {
        id: entry.id.clone(),
        length: entry.values.len(),
        matched_count: 0,
        first_mismatch: None,
    };
    for (i, (expected, got)) in entry.values.iter().zip(&computed).enumerate() {
        if got.matches(expected) {
            report.matched_count += 1;
        } else if report.first_mismatch.is_none() {
            report.first_mismatch = Some(Mismatch {
                index: entry.offset + i as i64,
                expected: expected.clone(),
                computed: got.to_string(),
            });
        }
    }
    Ok(report)
}

/// Serializes entries as a catalog document.
pub fn catalog_to_json(entries: &[CatalogEntry]) -> String {
    let catalog = Catalog {
        entries: entries.to_vec(),
    };
    serde_json::to_string_pretty(&catalog).expect("catalog serializes")
}

impl CatalogEntry {
    /// Builds an entry from a family name and a JSON parameter object.
    pub fn from_parts(id: &str, family: &str, params: &str, offset: i64, values: Vec<Rational>) -> Result<Self> {
        let params: serde_json::Value = serde_json::from_str(params).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let tagged = serde_json::json!({ "family": family, "params": params });
        let spec: SequenceSpec = serde_json::from_value(tagged)
            .map_err(|e| Error::InvalidArgument(format!("bad family/params: {e}")))?;
        Ok(CatalogEntry {
            id: id.to_string(),
            spec,
            offset,
            values,
            provenance: Provenance::BFile,
            note: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn find(id: &str) -> CatalogEntry {
        builtin_catalog().into_iter().find(|e| e.id == id).unwrap()
    }

    #[test]
    fn every_builtin_entry_verifies() {
        for entry in builtin_catalog() {
            let report = verify_entry(&entry).unwrap();
            assert!(report.passed(), "{}: {:?}", entry.id, report.first_mismatch);
            assert_eq!(report.matched_count, entry.values.len());
        }
    }

    #[test]
    fn builtin_examples() {
        let ints = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(find("A001045").values, ints(&[0, 1, 1, 3, 5, 11, 21, 43, 85, 171]));
        assert_eq!(find("A131865").values[..5], ints(&[1, 17, 273, 4369, 69905]));
        let neg = find("jacobsthal-negative");
        assert_eq!(neg.offset, -7);
        assert_eq!(
            neg.values[..7],
            [rat(43, 128), rat(-21, 64), rat(11, 32), rat(-5, 16), rat(3, 8), rat(-1, 4), rat(1, 2)]
        );
        assert_eq!(find("A053404").provenance, Provenance::Derived);
    }

    #[test]
    fn corrupted_entry_reports_mismatch() {
        let mut entry = find("A015518");
        entry.values[4] = int(21);
        let report = verify_entry(&entry).unwrap();
        assert_eq!(report.matched_count, entry.values.len() - 1);
        let m = report.first_mismatch.unwrap();
        assert_eq!((m.index, m.expected, m.computed.as_str()), (4, int(21), "20"));
    }

    #[test]
    fn custom_family_is_unknown() {
        let mut entry = find("A015518");
        entry.spec = SequenceSpec::Custom;
        assert_eq!(verify_entry(&entry).unwrap_err(), Error::UnknownFamily("custom".into()));
    }

    #[test]
    fn json_round_trip() {
        let entries = builtin_catalog();
        let text = catalog_to_json(&entries);
        assert_eq!(parse_catalog(&text).unwrap(), entries);
        assert!(text.contains(r#""family": "engine-partial-sums""#));
    }

    #[test]
    fn entry_from_parts() {
        let e = CatalogEntry::from_parts("x", "gen-j", r#"{"r":"1","s":"2"}"#, 0, vec![int(0), int(1)]).unwrap();
        assert!(verify_entry(&e).unwrap().passed());
        assert!(CatalogEntry::from_parts("x", "nope", "{}", 0, vec![int(0)]).is_err());
    }
}
