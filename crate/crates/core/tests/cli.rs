//! Command-line behaviour: outputs, canonical JSON and exit codes.

use std::process::Command;

use cm_expansion::catalog::{format_bfile, write_bfile};
use cm_expansion::cli::run;
use cm_expansion::numerics::{int, parse_rational, rat};
use serde_json::Value;

fn cmx(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("cmx").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_of(args: &[&str]) -> (String, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = cmx(&full);
    assert_eq!(code, 0, "{args:?}: {err}");
    let v = serde_json::from_str(&out).unwrap();
    (out, v)
}

#[test]
fn expand_plain_example() {
    let (code, out, _) = cmx(&["expand", "--target", "1/3", "--ratio", "1/2", "--terms", "5", "--format", "plain"]);
    assert_eq!(code, 0);
    let sums: Vec<&str> = out
        .lines()
        .filter_map(|l| l.strip_prefix("X_"))
        .map(|l| l.split(" = ").nth(1).unwrap().split_whitespace().next().unwrap())
        .collect();
    assert_eq!(sums, ["0", "1/2", "1/4", "3/8", "5/16", "11/32"]);
}

#[test]
fn expand_json_shape() {
    let (_, v) = json_of(&["expand", "--target", "1/3", "--ratio", "1/2", "--terms", "3"]);
    assert_eq!(v["ratio"], "1/2");
    assert_eq!(v["x0"], "0");
    assert_eq!(v["terminated"], false);
    assert_eq!(v["error_bound_final"], "1/8");
    assert_eq!(v["terms"][0], serde_json::json!({"n": 1, "sign": 1, "magnitude": "1/2", "partial_sum": "1/2"}));
    assert_eq!(v["terms"][1]["sign"], -1);
}

#[test]
fn json_round_trips_byte_for_byte() {
    let commands: [&[&str]; 6] = [
        &["expand", "--target", "1/4*pi", "--ratio", "1/2", "--x0", "one", "--terms", "12", "--regroup", "3"],
        &["seq", "--family", "gen-j", "--r", "1", "--s", "3", "--from", "-2", "--to", "5"],
        &["seq", "--family", "j-complex", "--mu", "1-sqrt(3)", "--nu", "1+sqrt(3)", "--from", "0", "--to", "4"],
        &["identity", "--which", "all", "--family", "jlike", "--r", "2", "--s", "5", "--sweep", "4"],
        &["simulate", "--m0", "4", "--m1", "1", "--ratio", "1/2", "--steps", "6", "--trace"],
        &["verify"],
    ];
    for args in commands {
        let (text, v) = json_of(args);
        assert_eq!(format!("{v}\n"), text, "{args:?}");
    }
}

#[test]
fn regrouped_sums_are_every_kth_sum() {
    let (_, v) = json_of(&["expand", "--target", "1/7", "--ratio", "1/2", "--terms", "12", "--regroup", "3"]);
    let sums: Vec<&Value> = std::iter::once(&v["x0"]).chain(v["terms"].as_array().unwrap().iter().map(|t| &t["partial_sum"])).collect();
    let grouped = v["regroup"]["partial_sums"].as_array().unwrap();
    assert_eq!(grouped.len(), 5);
    for (k, g) in grouped.iter().enumerate() {
        assert_eq!(g, sums[3 * k]);
    }
}

#[test]
fn seq_negative_side_follows_reflection() {
    let (_, v) = json_of(&["seq", "--family", "gen-j", "--r", "1", "--s", "3", "--from", "-2", "--to", "5"]);
    assert_eq!(v["family"], "gen-j");
    let values: Vec<(i64, String)> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["n"].as_i64().unwrap(), e["value"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(values[2..], [0, 1, 2, 7, 20, 61].iter().enumerate().map(|(n, x)| (n as i64, x.to_string())).collect::<Vec<_>>()[..]);
    // J_(-n) = −(−1/(rs))^n·J_n
    for (n, j) in [(1i64, 1i64), (2, 2)] {
        let reflected = -(rat(-1, 3).pow(n as i32)) * int(j);
        let got = &values.iter().find(|(k, _)| *k == -n).unwrap().1;
        assert_eq!(parse_rational(got).unwrap(), reflected);
    }
}

#[test]
fn seq_families() {
    let plain = |args: &[&str]| cmx(args).1;
    assert_eq!(plain(&["seq", "--family", "jacobsthal", "--to", "5"]), "0 0\n1 1\n2 1\n3 3\n4 5\n5 11\n");
    assert_eq!(
        plain(&["seq", "--family", "gen-jlike", "--r", "1/2-1/2*sqrt(5)", "--s", "1/2+1/2*sqrt(5)", "--from", "8", "--to", "9"]),
        "8 21\n9 34\n"
    );
    assert_eq!(plain(&["seq", "--family", "lucas", "--p", "2", "--q", "-1", "--to", "4"]), "0 0\n1 1\n2 2\n3 5\n4 12\n");
    assert_eq!(
        plain(&["seq", "--family", "a-num", "--a", "2", "--b", "3", "--s", "4", "--t", "1", "--to", "3"]),
        "0 1\n1 1\n2 7\n3 25\n"
    );
    let (_, v) = json_of(&["seq", "--family", "j-complex", "--mu", "2", "--nu", "3", "--lambda", "0.5"]);
    let z = &v["values"][0]["value"];
    let expected = 3f64.sqrt() - 2f64.sqrt();
    assert!((z["re"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert_eq!(z["im"].as_f64().unwrap(), 0.0);
}

#[test]
fn identity_reports() {
    let (_, v) = json_of(&["identity", "--which", "docagne", "--family", "j", "--r", "1", "--s", "2", "--n", "3", "--m", "1"]);
    assert_eq!(v, serde_json::json!([{
        "identity": "docagne", "family": "gen-j", "r": 1, "s": 2, "n": 3, "m": 1,
        "lhs": "-2", "rhs": "-2", "holds": true
    }]));
    let (_, v) = json_of(&["identity", "--family", "jlike", "--r", "1", "--s", "3", "--sweep", "6"]);
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty() && reports.iter().all(|r| r["holds"] == true));
}

#[test]
fn simulate_trace_lines() {
    let (code, out, _) = cmx(&["simulate", "--m0", "2", "--m1", "1", "--ratio", "1/2", "--steps", "3", "--trace"]);
    assert_eq!(code, 0);
    assert!(out.contains("step 1: move 1/2@1 + 1/2@0 -> 1/2 ; estimate=1/2"), "{out}");
    assert!(out.contains("step 3: move 1/4@1/2 + 1/4@1/4 -> 3/8 ; estimate=3/8"), "{out}");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| cmx(args).0;
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&[]), 1);
    assert_eq!(code(&["expand", "--ratio", "1/2"]), 1);
    assert_eq!(code(&["expand", "--target", "1/x", "--ratio", "1/2"]), 1);
    assert_eq!(code(&["expand", "--target", "5/3", "--ratio", "1/2"]), 1);
    assert_eq!(code(&["expand", "--target", "pi", "--ratio", "1/2"]), 1);
    assert_eq!(code(&["expand", "--target", "1/3", "--ratio", "2/1"]), 1);
    assert_eq!(code(&["expand", "--target", "1/7", "--ratio", "1/3"]), 2);
    assert_eq!(code(&["simulate", "--m0", "6", "--m1", "1", "--ratio", "1/3", "--steps", "4"]), 2);
    assert_eq!(code(&["seq", "--family", "gen-jlike", "--r", "3", "--s", "3"]), 2);
    assert_eq!(code(&["seq", "--family", "j-complex", "--mu", "0", "--nu", "2", "--lambda", "0.5"]), 2);
    assert_eq!(code(&["identity", "--family", "j", "--r", "1", "--s", "2", "--n", "1", "--m", "2", "--which", "catalan"]), 1);
    let (c, _, err) = cmx(&["expand", "--target", "1/3*", "--ratio", "1/2"]);
    assert_eq!(c, 1);
    assert!(err.contains("position 4"), "{err}");
}

#[test]
fn verify_bfiles() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("b015518.txt");
    let values: Vec<_> = [0, 1, 2, 7, 20, 61].iter().map(|&v| int(v)).collect();
    write_bfile(&good, 0, &values).unwrap();
    let path = good.to_str().unwrap();
    let args = ["verify", "--bfile", path, "--id", "A015518", "--family", "gen-j", "--params", r#"{"r":"1","s":"3"}"#];
    assert_eq!(cmx(&args).0, 0);

    let bad = dir.path().join("bad.txt");
    let mut wrong = values.clone();
    wrong[3] = int(8);
    std::fs::write(&bad, format_bfile(0, &wrong)).unwrap();
    let bad_path = bad.to_str().unwrap();
    let mut args = args;
    args[2] = bad_path;
    let (code, out, _) = cmx(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(code, 3);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reports"][0]["first_mismatch"], serde_json::json!({"index": 3, "expected": "8", "computed": "7"}));

    std::fs::write(&bad, "0 0\n2 1\n").unwrap();
    assert_eq!(cmx(&args).0, 1);
}

#[test]
fn catalog_bfile_feeds_verify() {
    let (code, text, _) = cmx(&["catalog", "--id", "A003462"]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b003462.txt");
    std::fs::write(&path, text).unwrap();
    let args = ["verify", "--bfile", path.to_str().unwrap(), "--id", "A003462", "--family", "gen-j-like", "--params", r#"{"r":"1","s":"3"}"#];
    assert_eq!(cmx(&args).0, 0);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_cmx");
    let ok = Command::new(bin).args(["expand", "--target", "1/pi", "--ratio", "1/2", "--terms", "4"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("X_4 = 5/16"));
    let bad = Command::new(bin).args(["expand", "--target", "1/7", "--ratio", "1/3"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
}
