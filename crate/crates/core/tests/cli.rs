use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn zeroflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeroflow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn zeroflow_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zeroflow"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn zeros(v: &Value) -> Vec<f64> {
    v["zeros"].as_array().unwrap().iter().map(|z| z.as_f64().unwrap()).collect()
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn laguerre_three_by_flow() {
    let v = json(&zeroflow(&["solve", "--family", "laguerre", "--n", "3", "--method", "flow", "--start", "1,2,3"]));
    let z = zeros(&v);
    let expected = [0.4157745567834791, 2.294280360279042, 6.289945082937479];
    assert!(max_dev(&z, &expected) < 1e-8, "{z:?}");
    assert_eq!(v["method"], "flow");
    assert_eq!(v["lambda"], 3.0);
    assert!(v["residual_norm"].as_f64().unwrap() < 1e-9);
    assert!(v["manifest"]["timestamp"].is_u64());
}

#[test]
fn methods_agree() {
    let get = |m: &str| zeros(&json(&zeroflow(&["solve", "--family", "hermite", "--n", "9", "--method", m])));
    let spectral = get("spectral");
    assert!(max_dev(&spectral, &get("newton")) < 1e-9);
    assert!(max_dev(&spectral, &get("flow")) < 1e-8);
}

#[test]
fn raw_coefficients_match_family() {
    let raw = json(&zeroflow(&["solve", "--p", "0,1,0", "--q", "0,1", "--n", "5"]));
    let fam = json(&zeroflow(&["solve", "--family", "laguerre", "--n", "5"]));
    assert!(max_dev(&zeros(&raw), &zeros(&fam)) < 1e-12);
    let jac = json(&zeroflow(&["solve", "--family", "jacobi", "--alpha", "0.5", "--beta", "1.5", "--n", "4"]));
    let raw = json(&zeroflow(&["solve", "--p", "1,0,-1", "--q", "-1,2", "--n", "4"]));
    assert!(max_dev(&zeros(&raw), &zeros(&jac)) < 1e-12);
}

#[test]
fn flow_csv_is_deterministic() {
    let args = ["flow", "--family", "legendre", "--n", "6", "--init", "seeded", "--seed", "11", "--t-max", "0.5"];
    let a = zeroflow(&args);
    let b = zeroflow(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,x1,x2,x3,x4,x5,x6");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows[0][0], 0.0);
    assert!(rows.iter().all(|r| r.len() == 7 && r[1..].windows(2).all(|w| w[0] < w[1])));
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
}

#[test]
fn flow_csv_to_file() {
    let path = std::env::temp_dir().join(format!("zeroflow-cli-{}.csv", std::process::id()));
    let out = zeroflow(&["flow", "--family", "hermite", "--n", "3", "--t-max", "1", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("t,x1,x2,x3\n"));
    assert!(text.lines().last().unwrap().starts_with("1.0000000000000000e0,"));
}

#[test]
fn verify_exit_codes() {
    let good = zeroflow_stdin(
        &["verify", "-", "--family", "laguerre"],
        b"0.4157745567834791\n2.294280360279042\n6.289945082937479\n",
    );
    assert_eq!(good.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&good.stdout).unwrap();
    assert_eq!(v["is_equilibrium"], true);
    assert!((v["lambda"].as_f64().unwrap() - 3.0).abs() < 1e-8);

    let bad = zeroflow_stdin(&["verify", "-", "--family", "laguerre"], b"1\n2\n3\n");
    assert_eq!(bad.status.code(), Some(3));

    let garbage = zeroflow_stdin(&["verify", "-", "--family", "laguerre"], b"one\n");
    assert_eq!(garbage.status.code(), Some(1));
    let outside = zeroflow_stdin(&["verify", "-", "--family", "legendre"], b"0.5\n1.5\n");
    assert_eq!(outside.status.code(), Some(1));
}

#[test]
fn solve_then_verify() {
    let out = zeroflow(&["solve", "--family", "jacobi", "--alpha", "1", "--beta", "-0.5", "--n", "7", "--no-timestamp"]);
    let v = json(&out);
    assert!(v["manifest"]["timestamp"].is_null());
    let check = zeroflow_stdin(&["verify", "-"], &out.stdout);
    assert_eq!(check.status.code(), Some(0), "{}", String::from_utf8_lossy(&check.stderr));
    for family in ["hermite", "laguerre"] {
        let out = zeroflow(&["solve", "--family", family, "--n", "20"]);
        let check = zeroflow_stdin(&["verify", "-"], &out.stdout);
        assert_eq!(check.status.code(), Some(0), "{family}: {}", String::from_utf8_lossy(&check.stderr));
    }
}

#[test]
fn usage_errors() {
    assert_eq!(zeroflow(&["solve", "--n", "3"]).status.code(), Some(1));
    assert_eq!(zeroflow(&["solve", "--family", "jacobi", "--alpha", "-1", "--beta", "0", "--n", "3"]).status.code(), Some(1));
    assert_eq!(zeroflow(&["solve", "--family", "hermite", "--n", "0"]).status.code(), Some(1));
    assert_eq!(zeroflow(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(zeroflow(&["--help"]).status.code(), Some(0));
}

#[test]
fn rate_reports() {
    for (args, gap) in [
        (vec!["--family", "laguerre", "--n", "3"], 1.0),
        (vec!["--family", "legendre", "--n", "10"], 20.0),
        (vec!["--family", "hermite", "--n", "1", "--start", "2"], 1.0),
    ] {
        let mut all = vec!["rate"];
        all.extend(args);
        let v = json(&zeroflow(&all));
        let rep = &v["report"];
        assert_eq!(rep["theoretical_gap"].as_f64().unwrap(), gap);
        let ratio = v["ratio"].as_f64().unwrap();
        assert!((ratio - 1.0).abs() < 0.05, "{v}");
        assert!(rep["fit_quality"].as_f64().unwrap() > 0.98);
    }
}

#[test]
fn bench_rows_agree() {
    let out = zeroflow(&["bench", "--family", "hermite", "--sizes", "10,50,200"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,method,wall_time_s,final_residual,max_dev_vs_spectral,status");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    for r in rows {
        assert_eq!(r[5], "ok", "{r:?}");
        let dev: f64 = r[4].parse().unwrap();
        assert!(dev < 1e-6, "{r:?}");
    }
}
