use std::process::{Command, Output};

use serde_json::Value;

fn jacobi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = jacobi(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn keys(v: &Value) -> Vec<String> {
    let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
    k.sort();
    k
}

#[test]
fn invalid_configuration_exits_2() {
    for args in [
        &["covariance", "--w-re", "1.2"][..],
        &["casimir", "--k", "0.5"],
        &["verify", "--cutoff", "2"],
        &["verify", "--tol", "0.1"],
        &["covariance", "--m", "0"],
        &["verify", "--suite", "nope"],
        &["no-such-command"],
    ] {
        assert_eq!(jacobi(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn tolerance_failure_exits_1() {
    let out = jacobi(&["casimir", "--k", "3", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["deviation"].as_f64().unwrap() > 1e-300);
}

#[test]
fn covariance_schema() {
    let v = json(&["covariance", "--n", "0", "--w-re", "-0.3"]);
    assert_eq!(
        keys(&v),
        [
            "hbar",
            "product_check",
            "sigma_pp",
            "sigma_pq",
            "sigma_qq",
            "squeezed"
        ]
    );
    assert_eq!(v["squeezed"], Value::Bool(true));
    assert_eq!(v["hbar"].as_f64(), Some(0.5));
}

#[test]
fn casimir_vanishes_at_five_halves() {
    let v = json(&["casimir", "--k", "2.5"]);
    assert_eq!(v["expected"].as_f64(), Some(0.0));
    assert_eq!(v["level"].as_u64(), Some(24));
}

#[test]
fn matrix_element_schema() {
    let v = json(&[
        "matrix-element",
        "--rep",
        "ds",
        "--k",
        "4.25",
        "--n",
        "2",
        "--nprime",
        "5",
        "--w-re",
        "0.2",
        "--w-im",
        "-0.4",
    ]);
    for key in [
        "closed_re",
        "closed_im",
        "numeric_re",
        "numeric_im",
        "ratio_re",
        "ratio_im",
        "abs_diff",
    ] {
        assert!(v[key].is_number(), "{key}");
    }
    assert!((v["ratio_re"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let v = json(&[
        "matrix-element",
        "--rep",
        "sw",
        "--op",
        "squeeze",
        "--n",
        "0",
        "--nprime",
        "2",
        "--w-re",
        "0.3",
    ]);
    assert!(v["closed_re"].is_null());
    assert!(v["numeric_re"].as_f64().unwrap() > 0.0);
}

#[test]
fn mandel_grid_csv() {
    let out = jacobi(&[
        "mandel-grid",
        "--n",
        "0",
        "--grid-r",
        "2",
        "--grid-theta",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(&out.stdout[..]);
    let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        headers,
        [
            "w_re",
            "w_im",
            "alpha_re",
            "alpha_im",
            "n",
            "q_closed",
            "q_numeric",
            "abs_diff",
            "zero_radius",
            "reason"
        ]
    );
    assert_eq!(reader.records().count(), 6);
}

#[test]
fn mandel_vacuum_has_reason() {
    let v = json(&["mandel-grid", "--n", "0"]);
    let row = &v[0];
    assert!(row["q_closed"].is_null());
    assert!(row["reason"].as_str().unwrap().contains("vacuum"));
}

#[test]
fn squeeze_disk_schema() {
    let v = json(&["squeeze-disk", "--n", "1"]);
    assert_eq!(v["center_re"].as_f64(), Some(-0.75));
    assert_eq!(v["radius"].as_f64(), Some(0.25));
    assert_eq!(v["boundary"].as_array().unwrap().len(), 64);
}

#[test]
fn verify_subset_writes_file() {
    let path = std::env::temp_dir().join(format!("jacobi-verify-{}.json", std::process::id()));
    let out = jacobi(&[
        "verify",
        "--suite",
        "structure,disk",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
    assert_eq!(v["passed"], Value::Bool(true));
}
