//! End-to-end checks of the command-line surface: exit codes, output
//! schemas, config handling, and byte-determinism.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ffdioph")
}

fn write_file(dir: &tempfile::TempDir, name: &str, content: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn fixtures(dir: &tempfile::TempDir) -> (std::path::PathBuf, std::path::PathBuf) {
    let matrix = write_file(
        dir,
        "inv_z.json",
        r#"{"field":{"p":2,"e":1},"m":1,"n":1,"entries":[{"ratfunc":{"num":[1],"den":[0,1]}}]}"#,
    );
    let weights = write_file(dir, "w.json", r#"{"r":[1],"s":[1]}"#);
    (matrix, weights)
}

#[test]
fn minima_matches_documented_example() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_file(
        &dir,
        "diag.json",
        r#"{"field":{"p":2,"e":1},"m":2,"n":2,"entries":[
            {"ratfunc":{"num":[0,1],"den":[1]}},
            {"ratfunc":{"num":[],"den":[1]}},
            {"ratfunc":{"num":[],"den":[1]}},
            {"ratfunc":{"num":[1],"den":[0,1]}}]}"#,
    );
    let out = run(&["minima", "--matrix", matrix.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lambda_logs"], serde_json::json!(["-1", "1"]));
    assert_eq!(v["covol_log"], "-2");
    assert_eq!(v["product_check"], "ok");
}

#[test]
fn classify_fixture_is_certified() {
    let dir = tempfile::tempdir().unwrap();
    let (matrix, weights) = fixtures(&dir);
    let out = run(&[
        "classify",
        "--matrix",
        matrix.to_str().unwrap(),
        "--weights",
        weights.to_str().unwrap(),
        "--horizon",
        "4",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "SINGULAR_CERTIFIED");
}

#[test]
fn exit_code_1_on_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_file(&dir, "bad.json", "{ not json");
    let out = run(&["minima", "--matrix", matrix.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    // Entry-count mismatch is also malformed input.
    let matrix = write_file(
        &dir,
        "short.json",
        r#"{"field":{"p":2,"e":1},"m":2,"n":2,"entries":[{"ratfunc":{"num":[1],"den":[1]}}]}"#,
    );
    let out = run(&["minima", "--matrix", matrix.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_code_2_on_precondition() {
    let dir = tempfile::tempdir().unwrap();
    // Singular basis.
    let matrix = write_file(
        &dir,
        "singular.json",
        r#"{"field":{"p":2,"e":1},"m":2,"n":2,"entries":[
            {"ratfunc":{"num":[1],"den":[1]}},
            {"ratfunc":{"num":[1],"den":[1]}},
            {"ratfunc":{"num":[],"den":[1]}},
            {"ratfunc":{"num":[],"den":[1]}}]}"#,
    );
    let out = run(&["minima", "--matrix", matrix.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // Inadmissible alpha.
    let (matrix, weights) = fixtures(&dir);
    let out = run(&[
        "dirichlet",
        "--matrix",
        matrix.to_str().unwrap(),
        "--weights",
        weights.to_str().unwrap(),
        "--alpha",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_3_on_budget_exhaustion() {
    let dir = tempfile::tempdir().unwrap();
    let (matrix, weights) = fixtures(&dir);
    let out = run(&[
        "orbit",
        "--matrix",
        matrix.to_str().unwrap(),
        "--weights",
        weights.to_str().unwrap(),
        "--eps-log",
        "-1",
        "--steps",
        "6",
        "--budget",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_code_4_on_precision_exhaustion() {
    let dir = tempfile::tempdir().unwrap();
    // Two identical truncated columns force a cancellation whose leading
    // coefficient falls below every trustworthy window.
    let matrix = write_file(
        &dir,
        "trunc.json",
        r#"{"field":{"p":2,"e":1},"m":2,"n":2,"entries":[
            {"val":1,"coeffs":[1,0,1],"prec":3},
            {"val":1,"coeffs":[1,0,1],"prec":3},
            {"ratfunc":{"num":[1],"den":[1]}},
            {"ratfunc":{"num":[1],"den":[1]}}]}"#,
    );
    let out = run(&["minima", "--matrix", matrix.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn csv_and_json_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (matrix, weights) = fixtures(&dir);
    let base = [
        "orbit",
        "--matrix",
        matrix.to_str().unwrap(),
        "--weights",
        weights.to_str().unwrap(),
        "--eps-log",
        "-1",
        "--steps",
        "3",
    ];
    let mut csv_args = base.to_vec();
    csv_args.extend(["--output", "csv"]);
    let out = run(&csv_args);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("ell,systole_log,in_X_gt_eps,arithmetic_side\n"));
    assert!(text.contains("escape_fraction,"));

    let mut json_args = base.to_vec();
    json_args.extend(["--output", "json"]);
    let out = run(&json_args);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let (matrix, weights) = fixtures(&dir);
    let config = write_file(&dir, "run.conf", "output=csv\nbudget.enum=2\n");
    // The tiny budget from the file makes the run fail...
    let out = run(&[
        "orbit",
        "--matrix",
        matrix.to_str().unwrap(),
        "--weights",
        weights.to_str().unwrap(),
        "--eps-log",
        "-1",
        "--steps",
        "3",
        "--config",
        config.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    // ...and the flag override restores it while keeping csv output.
    let out = run(&[
        "orbit",
        "--matrix",
        matrix.to_str().unwrap(),
        "--weights",
        weights.to_str().unwrap(),
        "--eps-log",
        "-1",
        "--steps",
        "3",
        "--config",
        config.to_str().unwrap(),
        "--budget",
        "1000000",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("ell,"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (matrix, weights) = fixtures(&dir);
    let args = [
        "classify",
        "--matrix",
        matrix.to_str().unwrap(),
        "--weights",
        weights.to_str().unwrap(),
        "--horizon",
        "4",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn expand_emits_window_schema() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(
        &dir,
        "rf.json",
        r#"{"field":{"p":2,"e":1},"ratfunc":{"num":[1],"den":[1,1]}}"#,
    );
    let out = run(&["expand", "--input", input.to_str().unwrap(), "--prec", "5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["val"], 1);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 5);
}

#[test]
fn epsbad_verdict_schema() {
    let dir = tempfile::tempdir().unwrap();
    let (matrix, weights) = fixtures(&dir);
    let theta = write_file(
        &dir,
        "theta.json",
        r#"{"field":{"p":2,"e":1},"entries":[{"ratfunc":{"num":[1],"den":[0,1]}}]}"#,
    );
    let out = run(&[
        "epsbad",
        "--matrix",
        matrix.to_str().unwrap(),
        "--weights",
        weights.to_str().unwrap(),
        "--theta",
        theta.to_str().unwrap(),
        "--eps-log",
        "-2",
        "--horizon-log",
        "4",
    ]);
    assert!(out.status.success(), "{:?}", out);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["verdict"] == "no_violation_up_to_horizon" || v["verdict"] == "witness");
}
