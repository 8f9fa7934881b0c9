//! End-to-end exit-code and determinism contract of the `lcdt` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lcdt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcdt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn kernel_prints_fourier_samples() {
    // k = -1/2, θ = π/2 ⇒ kernel e^{iλx}
    let out = lcdt(&[
        "kernel",
        "--k",
        "-0.5",
        "--theta",
        "1.5707963267948966",
        "--x",
        "1.0",
        "--lambda-range",
        "-2:2:5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lambda,re,im"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for row in &rows {
        let (lambda, re, im) = (row[0], row[1], row[2]);
        assert!((re - lambda.cos()).abs() < 1e-12);
        assert!((im - lambda.sin()).abs() < 1e-12);
    }
}

#[test]
fn kernel_rejects_bad_order_with_exit_2() {
    let out = lcdt(&[
        "kernel",
        "--k",
        "-1",
        "--theta",
        "1.0",
        "--x",
        "1.0",
        "--lambda-range",
        "0:1:2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kernel_empty_range_prints_header_only() {
    let out = lcdt(&[
        "kernel",
        "--k",
        "0.5",
        "--theta",
        "0.7",
        "--x",
        "1.0",
        "--lambda-range",
        "0:1:0",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "lambda,re,im");
}

#[test]
fn kernel_rejects_degenerate_matrix() {
    let out = lcdt(&[
        "kernel",
        "--k",
        "0.0",
        "--matrix",
        "2,0,0,0.5",
        "--x",
        "1.0",
        "--lambda-range",
        "0:1:3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transform_writes_default_grid_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("spec.csv");
    let out = lcdt(&[
        "transform",
        "--signal",
        "gaussian:s=1",
        "--k",
        "0",
        "--theta",
        "1.5707963267948966",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "lambda,re,im");
    assert_eq!(lines.len(), 1 + 513, "default grid is 513 points");
    // byte-identical on rerun
    let out_path2 = dir.path().join("spec2.csv");
    let out2 = lcdt(&[
        "transform",
        "--signal",
        "gaussian:s=1",
        "--k",
        "0",
        "--theta",
        "1.5707963267948966",
        "--out",
        out_path2.to_str().unwrap(),
    ]);
    assert!(out2.status.success());
    assert_eq!(
        text,
        fs::read_to_string(&out_path2).unwrap(),
        "CSV output is deterministic"
    );
}

#[test]
fn transform_zero_signal_writes_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("zero.csv");
    let out = lcdt(&[
        "transform",
        "--signal",
        "zero",
        "--k",
        "0.5",
        "--theta",
        "1.0",
        "--grid",
        "-3:3:7",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for line in fs::read_to_string(&out_path).unwrap().lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(cols[1], 0.0);
        assert_eq!(cols[2], 0.0);
    }
}

#[test]
fn transform_sampled_input_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let in_path = dir.path().join("samples.csv");
    // e^{-x²} sampled densely enough for the spline to be faithful
    let mut csv = String::from("x,re,im\n");
    for i in 0..=400 {
        let x = -8.0 + 16.0 * i as f64 / 400.0;
        csv.push_str(&format!("{x},{},0\n", (-x * x).exp()));
    }
    fs::write(&in_path, csv).unwrap();
    let out_path = dir.path().join("spec.csv");
    let out = lcdt(&[
        "transform",
        "--input",
        in_path.to_str().unwrap(),
        "--k",
        "-0.5",
        "--matrix",
        "0,-1,1,0",
        "--grid",
        "-3:3:13",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // |D(λ)| = e^{-λ²/4}/√2 for the classical pair
    for line in fs::read_to_string(&out_path).unwrap().lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let expect = (-cols[0] * cols[0] / 4.0).exp() / 2.0f64.sqrt();
        let norm = (cols[1] * cols[1] + cols[2] * cols[2]).sqrt();
        assert!(
            (norm - expect).abs() < 1e-5,
            "λ = {}: {} vs {}",
            cols[0],
            norm,
            expect
        );
    }
}

#[test]
fn transform_malformed_csv_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let in_path = dir.path().join("bad.csv");
    fs::write(&in_path, "x,re,im\n0,1\n").unwrap();
    let out = lcdt(&[
        "transform",
        "--input",
        in_path.to_str().unwrap(),
        "--k",
        "0",
        "--theta",
        "1.0",
        "--out",
        dir.path().join("o.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

fn small_config(dir: &Path, seed: u64) -> std::path::PathBuf {
    let path = dir.join("config.json");
    fs::write(
        &path,
        format!(
            r#"{{
  "seed": {seed},
  "orders": [0.0],
  "thetas": [1.5707963267948966],
  "p_values": [2.0],
  "s_values": [1.0],
  "heavy_matrix_limit": 0,
  "miyachi": {{ "s": [0.5], "b": [-1.0], "k": [-0.5] }},
  "cowling": {{ "m": [0], "delta": [1.0], "k": [0.5] }}
}}"#
        ),
    )
    .unwrap();
    path
}

/// Byte-identical reports (timestamp excluded) from two runs with the same
/// seed, and exit code 0.
#[test]
fn verify_is_deterministic_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_config(dir.path(), 7);
    let out_a = dir.path().join("a.json");
    let out_b = dir.path().join("b.json");
    for (path, _) in [(&out_a, 0), (&out_b, 1)] {
        let out = lcdt(&[
            "verify",
            "--config",
            config.to_str().unwrap(),
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let strip = |text: &str| -> String {
        text.lines()
            .filter(|l| !l.contains("\"timestamp\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = fs::read_to_string(&out_a).unwrap();
    let b = fs::read_to_string(&out_b).unwrap();
    assert_eq!(
        strip(&a),
        strip(&b),
        "reports must be byte-identical apart from the timestamp"
    );
    // sanity: the report carries cases and a summary
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(doc["cases"].as_array().unwrap().len() > 10);
    assert_eq!(doc["meta"]["seed"], 7);
}

#[test]
fn verify_rejects_bad_order_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    fs::write(&config, r#"{ "orders": [-1.0] }"#).unwrap();
    let out = lcdt(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().join("r.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_bad_matrix_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    fs::write(&config, r#"{ "matrices": [[1.0, 1.0, 1.0, 1.0]] }"#).unwrap();
    let out = lcdt(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().join("r.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_renders_summary_table() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_config(dir.path(), 3);
    let json_path = dir.path().join("r.json");
    let out = lcdt(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--out",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = lcdt(&["report", "--in", json_path.to_str().unwrap()]);
    assert!(out.status.success());
    let table = stdout(&out);
    for id in [
        "plancherel_formula",
        "inversion_formula",
        "young_inequality",
        "clarkson_l1_lp",
    ] {
        assert!(table.contains(id), "table missing {id}:\n{table}");
    }
}

#[test]
fn report_empty_cases_prints_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("empty.json");
    fs::write(&json_path, r#"{ "cases": [], "summary": {} }"#).unwrap();
    let out = lcdt(&["report", "--in", json_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1, "header only");
}

#[test]
fn report_missing_or_malformed_exits_2() {
    let out = lcdt(&["report", "--in", "/nonexistent/definitely-missing.json"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let out = lcdt(&["report", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
