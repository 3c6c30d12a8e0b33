//! The `cmx` command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 mathematical failure,
//! 3 verification mismatch. JSON output is compact with sorted keys, so
//! re-serializing parsed output reproduces it byte for byte.

mod target;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::{
    builtin_catalog, catalog_to_json, compute_values, format_bfile, load_bfile, load_catalog, verify_entry,
    CatalogEntry, Computed, SequenceSpec, VerificationReport,
};
use crate::engine::{expand, regroup, Expansion, ExpansionRatio, GroupedSeries, X0Policy};
use crate::error::{Error, Result};
use crate::identities::{identity_check, IdentityKind, IdentityReport};
use crate::numerics::{parse_rational, ComplexPair};
use crate::sequences::{a_continuous, j_continuous, ANumberParams, ContinuationParams, FamilyKind};
use crate::simulator::simulate;

pub use target::{parse_target, TargetExpr};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cmx", version, about = "Center-of-mass expansions and Jacobsthal-type sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a target in powers of r/s.
    Expand(ExpandArgs),
    /// Print a range of a sequence family.
    Seq(SeqArgs),
    /// Check the Catalan, convolution and d'Ocagne identities.
    Identity(IdentityArgs),
    /// Run the mass-moving simulation.
    Simulate(SimulateArgs),
    /// Verify catalog entries or a b-file.
    Verify(VerifyArgs),
    /// Print the builtin catalog, or one entry as a b-file.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum X0Arg {
    Zero,
    One,
    Larger,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long)]
    target: String,
    #[arg(long)]
    ratio: String,
    #[arg(long, value_enum, default_value = "larger")]
    x0: X0Arg,
    #[arg(long, default_value_t = 16)]
    terms: usize,
    #[arg(long, default_value_t = 256)]
    bits: u32,
    /// Also resum the series in blocks of K terms.
    #[arg(long, value_name = "K")]
    regroup: Option<usize>,
    #[arg(long, value_enum, default_value = "plain")]
    format: TableFormat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeqFamily {
    Jacobsthal,
    GenJ,
    GenJlike,
    Lucas,
    ANum,
    JComplex,
}

#[derive(Args, Debug)]
struct SeqArgs {
    #[arg(long, value_enum)]
    family: SeqFamily,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Evaluate at one complex index instead of the integer range.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    from: i64,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    to: i64,
    #[arg(long, value_enum, default_value = "plain")]
    format: TableFormat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WhichIdentity {
    Catalan,
    Convolution,
    Docagne,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IdentityFamily {
    J,
    Jlike,
}

#[derive(Args, Debug)]
struct IdentityArgs {
    #[arg(long, value_enum, default_value = "all")]
    which: WhichIdentity,
    #[arg(long, value_enum)]
    family: IdentityFamily,
    #[arg(long)]
    r: i64,
    #[arg(long)]
    s: i64,
    #[arg(long, requires = "m", allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long, requires = "n", allow_hyphen_values = true)]
    m: Option<i64>,
    /// Check every valid 0 <= n, m <= NMAX (default 8 when --n/--m are absent).
    #[arg(long, value_name = "NMAX", conflicts_with = "n")]
    sweep: Option<i64>,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    m0: String,
    #[arg(long)]
    m1: String,
    #[arg(long)]
    ratio: String,
    #[arg(long)]
    steps: usize,
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "bfile")]
    catalog: Option<PathBuf>,
    #[arg(long, requires_all = ["id", "family"])]
    bfile: Option<PathBuf>,
    #[arg(long)]
    id: Option<String>,
    #[arg(long)]
    family: Option<String>,
    /// JSON object with the family parameters.
    #[arg(long, default_value = "{}")]
    params: String,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    /// Print only this entry, as a b-file.
    #[arg(long)]
    id: Option<String>,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Expand(a) => cmd_expand(&a, out),
        Command::Seq(a) => cmd_seq(&a, out),
        Command::Identity(a) => cmd_identity(&a, out),
        Command::Simulate(a) => cmd_simulate(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Catalog(a) => cmd_catalog(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_mathematical() {
                EXIT_MATH
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<()> {
    writeln!(out, "{value}")?;
    Ok(())
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn cmd_expand(a: &ExpandArgs, out: &mut dyn Write) -> Result<i32> {
    let target = parse_target(&a.target)?;
    let ratio: ExpansionRatio = a.ratio.parse()?;
    let policy = match a.x0 {
        X0Arg::Zero => X0Policy::AtZero,
        X0Arg::One => X0Policy::AtOne,
        X0Arg::Larger => X0Policy::LargerGroup,
    };
    let e = expand(&target.to_target()?, &ratio, policy, a.terms, a.bits)?;
    let grouped = a.regroup.map(|k| regroup(&e, k)).transpose()?;
    match a.format {
        TableFormat::Json => emit_json(out, &expansion_json(&target, &e, grouped.as_ref()))?,
        TableFormat::Csv => {
            writeln!(out, "n,sign,magnitude,partial_sum")?;
            writeln!(out, "0,,,{}", e.x0)?;
            for n in 1..=e.terms() {
                let t = e.term(n);
                writeln!(out, "{n},{},{},{}", e.signs[n - 1].as_i8(), t.abs_value(), e.partial_sums[n])?;
            }
        }
        TableFormat::Plain => {
            writeln!(out, "target {target}, ratio {ratio}")?;
            writeln!(out, "X_0 = {}", e.x0)?;
            for n in 1..=e.terms() {
                let sign = if e.signs[n - 1].as_i8() > 0 { '+' } else { '-' };
                writeln!(out, "X_{n} = {}  ({sign}{})", e.partial_sums[n], e.term(n).abs_value())?;
            }
            if e.terminated {
                writeln!(out, "terminated: exact after {} terms", e.terms())?;
            } else {
                writeln!(out, "error bound: {}", e.final_error_bound())?;
            }
            if let Some(g) = &grouped {
                writeln!(out, "blocks of {}:", g.block)?;
                for (k, (c, x)) in g.coefficients.iter().zip(&g.partial_sums[1..]).enumerate() {
                    writeln!(out, "block {}: coefficient {c}, sum {x}", k + 1)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

trait AbsValue {
    fn abs_value(&self) -> Self;
}

impl AbsValue for crate::numerics::Rational {
    fn abs_value(&self) -> Self {
        num_traits::Signed::abs(self)
    }
}

fn expansion_json(target: &TargetExpr, e: &Expansion, grouped: Option<&GroupedSeries>) -> Value {
    let terms: Vec<Value> = (1..=e.terms())
        .map(|n| {
            json!({
                "n": n,
                "sign": e.signs[n - 1].as_i8(),
                "magnitude": e.term(n).abs_value().to_string(),
                "partial_sum": e.partial_sums[n].to_string(),
            })
        })
        .collect();
    let mut v = json!({
        "target": target.to_string(),
        "ratio": e.ratio.to_string(),
        "x0": e.x0.to_string(),
        "terms": terms,
        "terminated": e.terminated,
        "error_bound_final": e.final_error_bound().to_string(),
    });
    if let Some(g) = grouped {
        v["regroup"] = json!({
            "block": g.block,
            "coefficients": strings(&g.coefficients),
            "partial_sums": strings(&g.partial_sums),
        });
    }
    v
}

fn require<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required for this family")))
}

fn cmd_seq(a: &SeqArgs, out: &mut dyn Write) -> Result<i32> {
    if a.to < a.from {
        return Err(Error::InvalidArgument(format!("--to {} is below --from {}", a.to, a.from)));
    }
    let (name, params, spec) = seq_spec(a)?;
    let rows: Vec<(Value, Value, String)> = match (&a.lambda, &spec) {
        (Some(lambda), _) => {
            let lambda: ComplexPair = lambda.parse()?;
            let z = match a.family {
                SeqFamily::JComplex => j_continuous(&ContinuationParams {
                    mu: require(&a.mu, "mu")?.parse()?,
                    nu: require(&a.nu, "nu")?.parse()?,
                    lambda,
                    gamma: None,
                })?,
                SeqFamily::ANum => a_continuous(
                    &ANumberParams {
                        a: require(&a.a, "a")?.parse()?,
                        b: require(&a.b, "b")?.parse()?,
                        s: require(&a.s, "s")?.parse()?,
                        t: require(&a.t, "t")?.parse()?,
                    },
                    lambda,
                )?,
                _ => return Err(Error::InvalidArgument("--lambda applies to j-complex and a-num".into())),
            };
            vec![(json!(lambda), json!(z), z.to_string())]
        }
        (None, spec) => {
            let count = (a.to - a.from + 1) as usize;
            compute_values(spec, a.from, count)?
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    let n = a.from + i as i64;
                    let v = match &c {
                        Computed::Exact(x) => json!(x.to_string()),
                        Computed::Approx(z) => json!(z),
                    };
                    (json!(n), v, c.to_string())
                })
                .collect()
        }
    };
    let key = if a.lambda.is_some() { "lambda" } else { "n" };
    match a.format {
        TableFormat::Json => {
            let values: Vec<Value> = rows.iter().map(|(n, v, _)| json!({ key: n, "value": v })).collect();
            emit_json(out, &json!({ "family": name, "params": params, "values": values }))?;
        }
        TableFormat::Csv => {
            writeln!(out, "{key},value")?;
            for (n, _, text) in &rows {
                writeln!(out, "{},{text}", plain_index(n))?;
            }
        }
        TableFormat::Plain => {
            for (n, _, text) in &rows {
                writeln!(out, "{} {text}", plain_index(n))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn plain_index(v: &Value) -> String {
    match v {
        Value::Object(_) => serde_json::from_value::<ComplexPair>(v.clone()).map_or(v.to_string(), |z| z.to_string()),
        other => other.to_string(),
    }
}

fn seq_spec(a: &SeqArgs) -> Result<(&'static str, Value, SequenceSpec)> {
    let two = |x: &str, y: &str, fx: &str, fy: &str| -> Result<(String, String)> {
        Ok((require(&opt(x), fx)?.to_string(), require(&opt(y), fy)?.to_string()))
    };
    fn opt(x: &str) -> Option<String> {
        (!x.is_empty()).then(|| x.to_string())
    }
    let get = |v: &Option<String>| v.clone().unwrap_or_default();
    Ok(match a.family {
        SeqFamily::Jacobsthal => (
            "jacobsthal",
            json!({}),
            SequenceSpec::GenJ {
                r: "1".into(),
                s: "2".into(),
            },
        ),
        SeqFamily::GenJ | SeqFamily::GenJlike => {
            let (r, s) = two(&get(&a.r), &get(&a.s), "r", "s")?;
            let params = json!({ "r": r, "s": s });
            match a.family {
                SeqFamily::GenJ => ("gen-j", params, SequenceSpec::GenJ { r, s }),
                _ => ("gen-jlike", params, SequenceSpec::GenJLike { r, s }),
            }
        }
        SeqFamily::Lucas => {
            let (p, q) = two(&get(&a.p), &get(&a.q), "p", "q")?;
            ("lucas", json!({ "p": p, "q": q }), SequenceSpec::Lucas { p, q })
        }
        SeqFamily::ANum => {
            let (x, y) = two(&get(&a.a), &get(&a.b), "a", "b")?;
            let (s, t) = two(&get(&a.s), &get(&a.t), "s", "t")?;
            (
                "a-num",
                json!({ "a": x, "b": y, "s": s, "t": t }),
                SequenceSpec::ANumber { a: x, b: y, s, t },
            )
        }
        SeqFamily::JComplex => {
            let (mu, nu) = two(&get(&a.mu), &get(&a.nu), "mu", "nu")?;
            ("j-complex", json!({ "mu": mu, "nu": nu }), SequenceSpec::JContinuous { mu, nu })
        }
    })
}

fn cmd_identity(a: &IdentityArgs, out: &mut dyn Write) -> Result<i32> {
    let family = match a.family {
        IdentityFamily::J => FamilyKind::GenJ,
        IdentityFamily::Jlike => FamilyKind::GenJLike,
    };
    let kinds: Vec<IdentityKind> = match a.which {
        WhichIdentity::Catalan => vec![IdentityKind::Catalan],
        WhichIdentity::Convolution => vec![IdentityKind::Convolution],
        WhichIdentity::Docagne => vec![IdentityKind::DOcagne],
        WhichIdentity::All => IdentityKind::ALL.to_vec(),
    };
    let mut reports: Vec<IdentityReport> = Vec::new();
    match (a.n, a.m) {
        (Some(n), Some(m)) => {
            for kind in kinds {
                reports.push(identity_check(kind, family, a.r, a.s, n, m)?);
            }
        }
        _ => {
            let n_max = a.sweep.unwrap_or(8);
            for kind in kinds {
                for n in 0..=n_max {
                    for m in 0..=n_max {
                        match identity_check(kind, family, a.r, a.s, n, m) {
                            Ok(rep) => reports.push(rep),
                            Err(Error::InvalidIndices { .. }) => {}
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
    }
    let failures = reports.iter().filter(|r| !r.holds).count();
    match a.format {
        Format::Json => emit_json(out, &serde_json::to_value(&reports).expect("reports serialize"))?,
        Format::Plain => {
            for r in &reports {
                let verdict = if r.holds { "holds" } else { "FAILS" };
                writeln!(
                    out,
                    "{} {:?} r={} s={} n={} m={}: lhs={} rhs={} {verdict}",
                    r.identity, r.family, r.r, r.s, r.n, r.m, r.lhs, r.rhs
                )?;
            }
            writeln!(out, "{} checked, {failures} failed", reports.len())?;
        }
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<i32> {
    let m0 = parse_rational(&a.m0)?;
    let m1 = parse_rational(&a.m1)?;
    let ratio: ExpansionRatio = a.ratio.parse()?;
    let sim = simulate(m0.clone(), m1.clone(), &ratio, a.steps)?;
    let trace = strings(&sim.trace);
    match a.format {
        Format::Json => {
            let mut v = json!({
                "m0": m0.to_string(),
                "m1": m1.to_string(),
                "ratio": ratio.to_string(),
                "target_cm": sim.ledger.target_cm().to_string(),
                "estimates": strings(&sim.estimates),
                "terminated": sim.terminated,
            });
            if a.trace {
                v["trace"] = json!(trace);
            }
            emit_json(out, &v)?;
        }
        Format::Plain => {
            writeln!(out, "target cm {}", sim.ledger.target_cm())?;
            if a.trace {
                for line in &trace {
                    writeln!(out, "{line}")?;
                }
            } else {
                for (k, x) in sim.estimates.iter().enumerate() {
                    writeln!(out, "X_{} = {x}", k + 1)?;
                }
            }
            if sim.terminated {
                writeln!(out, "terminated: estimate equals the center of mass")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let entries = match (&a.bfile, &a.catalog) {
        (Some(path), _) => {
            let (offset, values) = load_bfile(path)?;
            let id = a.id.as_deref().unwrap_or_default();
            let family = a.family.as_deref().unwrap_or_default();
            vec![CatalogEntry::from_parts(id, family, &a.params, offset, values)?]
        }
        (None, Some(path)) => load_catalog(path)?,
        (None, None) => builtin_catalog(),
    };
    let reports: Vec<VerificationReport> = entries.iter().map(verify_entry).collect::<Result<_>>()?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    match a.format {
        Format::Json => emit_json(out, &json!({ "reports": reports, "failed": failed }))?,
        Format::Plain => {
            for r in &reports {
                match &r.first_mismatch {
                    None => writeln!(out, "{}: ok ({}/{})", r.id, r.matched_count, r.length)?,
                    Some(m) => writeln!(
                        out,
                        "{}: MISMATCH at n={}: expected {}, computed {} ({}/{} matched)",
                        r.id, m.index, m.expected, m.computed, r.matched_count, r.length
                    )?,
                }
            }
            writeln!(out, "{} entries, {failed} with mismatches", reports.len())?;
        }
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_catalog(a: &CatalogArgs, out: &mut dyn Write) -> Result<i32> {
    let entries = builtin_catalog();
    match &a.id {
        None => writeln!(out, "{}", catalog_to_json(&entries))?,
        Some(id) => {
            let entry = entries
                .iter()
                .find(|e| &e.id == id)
                .ok_or_else(|| Error::InvalidArgument(format!("no catalog entry `{id}`")))?;
            write!(out, "# {}\n{}", entry.id, format_bfile(entry.offset, &entry.values))?;
        }
    }
    Ok(EXIT_OK)
}
