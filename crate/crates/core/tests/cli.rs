use std::process::{Command, Output};

use hdepth_core::{hdepth_report, parse_ideal};
use serde_json::Value;

fn hdepth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdepth")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json", "--deterministic"]);
    let out = hdepth(&all);
    assert!(out.status.code().is_some(), "{out:?}");
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn compute_examples() {
    for (n, ideal, q, i) in [
        ("3", "x1*x2*x3", 2, 3),
        ("3", "x1, x2, x3", 0, 2),
        ("4", "x1*x2, x3*x4", 2, 3),
    ] {
        let v = json(&["compute", "-n", n, ideal]);
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["command"], "compute");
        assert_eq!(v["results"]["hdepth_quotient"], q, "{ideal}");
        assert_eq!(v["results"]["hdepth_ideal"], i, "{ideal}");
    }
}

#[test]
fn compute_json_round_trips() {
    let v = json(&["compute", "-n", "5", "x1*x2, x2*x3*x4, x5"]);
    let r = &v["results"];
    let ideal = parse_ideal(r["ideal"].as_str().unwrap(), 5).unwrap();
    let again = hdepth_report(&ideal).unwrap();
    assert_eq!(again.hdepth_quotient, r["hdepth_quotient"].as_u64().unwrap() as u32);
    assert_eq!(again.hdepth_ideal, r["hdepth_ideal"].as_u64().unwrap() as u32);
    let alpha: Vec<u64> = r["alpha_quotient"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(alpha, again.alpha_quotient.counts());
}

#[test]
fn input_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ideal.txt");
    std::fs::write(&path, "x1*x2, x3*x4\n").unwrap();
    let out = hdepth(&["compute", "-n", "4", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x1*x2, x3*x4"));

    let csv = hdepth(&["compute", "-n", "3", "x1", "--format", "csv"]);
    let lines: Vec<_> = std::str::from_utf8(&csv.stdout).unwrap().lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("n,gens,alpha_0"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| hdepth(args).status.code();
    assert_eq!(code(&["compute", "-n", "3", "x1*x1"]), Some(2));
    assert_eq!(code(&["compute", "-n", "3", "x1*x4"]), Some(2));
    assert_eq!(code(&["compute", "-n", "3", "0"]), Some(3));
    assert_eq!(code(&["compute", "-n", "3", "1"]), Some(3));
    assert_eq!(code(&["verify", "-n", "7", "--exhaustive"]), Some(4));
    assert_eq!(code(&["verify", "-n", "7", "--random", "--samples", "10"]), Some(2));
    assert_eq!(code(&["search", "-n", "4", "--exhaustive", "--predicate", "bogus"]), Some(2));
    assert_eq!(code(&["verify", "-n", "3", "--exhaustive", "--workers", "0"]), Some(2));
    assert_eq!(code(&["verify", "-n", "4", "--exhaustive"]), Some(0));
}

#[test]
fn parse_error_reports_position() {
    let out = hdepth(&["compute", "-n", "3", "x1*x2, x9"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position 7"), "{err}");
}

#[test]
fn deterministic_output_is_byte_identical() {
    let args = [
        "verify", "-n", "7", "--random", "--samples", "500", "--seed", "11", "--format", "json", "--deterministic",
    ];
    let mut runs = Vec::new();
    for workers in ["1", "3"] {
        let mut a = args.to_vec();
        a.extend(["--workers", workers]);
        let out = hdepth(&a);
        assert_eq!(out.status.code(), Some(0));
        runs.push(String::from_utf8(out.stdout).unwrap().replace(&format!("\"workers\": {workers}"), ""));
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(hdepth(&args).stdout, hdepth(&args).stdout);
    assert!(!runs[0].contains("generated_at_unix"));
}

#[test]
fn csv_rows_match_instance_count() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let out = hdepth(&["verify", "-n", "4", "--exhaustive", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let body = std::fs::read_to_string(path).unwrap();
    assert_eq!(body.lines().count(), 1 + 1 + 4 + 18 + 166);
}

#[test]
fn verify_tables_clean() {
    let v = json(&["verify", "--tables", "-n", "3", "--exhaustive"]);
    assert_eq!(v["results"]["tables"]["diffs"].as_array().unwrap().len(), 0);
    assert!(v["results"]["tables"]["cells_checked"].as_u64().unwrap() > 0);
    assert_eq!(v["results"]["passed"], true);
}

#[test]
fn exhaustive_search_reports_exhausted() {
    let v = json(&["search", "--predicate", "main", "-n", "5", "--exhaustive"]);
    assert_eq!(v["results"]["status"], "exhausted");
    assert_eq!(v["results"]["instances_scanned"], 7768);
    assert_eq!(v["results"]["violations"], 0);
}

#[test]
fn lemma79_search_is_applicable() {
    let v = json(&["search", "--predicate", "lemma79", "-n", "9", "--random", "--samples", "2000", "--seed", "1"]);
    assert_eq!(v["results"]["status"], "inconclusive");
    assert!(v["results"]["applicable"].as_u64().unwrap() > 0);
    assert_eq!(v["results"]["violations"], 0);
}
