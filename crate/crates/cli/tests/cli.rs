//! End-to-end runs of the `radmult` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn radmult(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radmult"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

/// Data rows of a CSV written by the binary, skipping the `#` header line.
fn rows(path: &Path) -> Vec<csv::StringRecord> {
    let text = fs::read_to_string(path).unwrap();
    let (first, body) = text.split_once('\n').unwrap();
    assert!(first.starts_with("# {"), "provenance line: {first}");
    let header: serde_json::Value = serde_json::from_str(&first[2..]).unwrap();
    assert!(header["config"].is_object());
    csv::Reader::from_reader(body.as_bytes()).records().map(Result::unwrap).collect()
}

#[test]
fn heat_is_a_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = radmult(&["radialize", "--symbol", "heat:t=1", "--grid", "32", "--extent", "8"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let profile = rows(&dir.path().join("profile.csv"));
    assert!(profile.len() > 10);
    for row in &profile {
        let r: f64 = row[0].parse().unwrap();
        let (re, im): (f64, f64) = (row[1].parse().unwrap(), row[2].parse().unwrap());
        assert!((re - (-r * r).exp()).abs() <= 1e-12 && im.abs() <= 1e-12, "r = {r}: {re} {im}");
    }
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("radialize.json")).unwrap()).unwrap();
    assert!(json["result"]["deviation_radialized"].as_f64().unwrap() <= 1e-12);
    assert!(json["result"]["deviation_original"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn verify_reruns_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["verify", "--grid", "32", "--extent", "8", "--seed", "7"];
    let first = radmult(&args, a.path());
    let second = radmult(&[&args[..], &["--threads", "1"]].concat(), b.path());
    assert_eq!(first.status.code(), second.status.code());
    assert!(matches!(first.status.code(), Some(0 | 1)), "{}", String::from_utf8_lossy(&first.stderr));
    for name in ["verify.csv", "verify.json"] {
        let (x, y) = (fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
        assert!(x == y, "{name} differs between runs");
    }
    let stdout = String::from_utf8_lossy(&first.stdout);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("criterion")).count(), 12);
}

#[test]
fn converge_errors_decrease() {
    let dir = tempfile::tempdir().unwrap();
    let out = radmult(&["converge", "--symbol", "gaussian_aniso:a11=1,a22=4", "--r", "2"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let errors: Vec<f64> = rows(&dir.path().join("converge.csv")).iter().map(|r| r[3].parse().unwrap()).collect();
    assert_eq!(errors.len(), 4);
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
    assert!(errors[3] <= 1e-10, "{errors:?}");
}

#[test]
fn norms_of_a_positive_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let out = radmult(&["norms", "--symbol", "heat:t=1", "--grid", "16", "--extent", "8", "--p", "2,inf"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = rows(&dir.path().join("norms.csv"));
    let exact: Vec<f64> = table.iter().filter(|r| &r[4] == "exact").map(|r| r[5].parse().unwrap()).collect();
    assert!(!exact.is_empty());
    assert!(exact.iter().all(|v| (v - 1.0).abs() <= 1e-6), "{exact:?}");
}

#[test]
fn positivity_of_the_ball_indicator_fails_before_projection() {
    let dir = tempfile::tempdir().unwrap();
    let out = radmult(&["positivity", "--symbol", "ball_indicator:rho=1", "--grid", "32", "--extent", "16"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("positivity.json")).unwrap()).unwrap();
    assert_eq!(json["result"]["verdict_original"], "not-positive");
}

#[test]
fn invalid_configuration_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["radialize", "--symbol", "heat:t=1", "--grid", "33"][..],
        &["radialize", "--symbol", "nosuch:x=1"],
        &["radialize", "--symbol", "heat:t=1", "--tol", "bogus=1"],
        &["verify", "--n", "3"],
        &["norms", "--symbol", "heat:t=1", "--p", "0.5"],
    ] {
        let out = radmult(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
