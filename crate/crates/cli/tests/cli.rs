//! End-to-end checks of the `ckn` binary: exit codes, config validation,
//! output determinism, and the bit-specified CSV schemas.

use std::path::Path;
use std::process::{Command, Output};

fn ckn(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckn"))
        .args(args)
        .current_dir(dir)
        .env_remove("CKN_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

const PARAMS: &[&str] = &["--n", "3", "--gamma", "0.5", "--alpha", "0.3", "--beta", "0.5"];

#[test]
fn constants_prints_deterministic_json() {
    let dir = tempfile::tempdir().unwrap();
    let a = ckn(&[&["constants"], PARAMS].concat(), dir.path());
    let b = ckn(&[&["constants"], PARAMS].concat(), dir.path());
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout, "repeated runs must be byte-identical");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["n", "gamma", "alpha", "beta", "p", "nu", "sigma_ng", "c_ng", "kappa", "C_alpha"] {
        assert!(v.get(key).is_some(), "missing key {key}");
    }
    assert!((v["p"].as_f64().unwrap() - 2.5).abs() < 1e-15);
    assert!((v["nu"].as_f64().unwrap() - 0.7).abs() < 1e-15);
}

#[test]
fn unknown_config_key_is_a_hard_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "n = 3\ngamma = 0.5\nalpha = 0.3\nbeta = 0.5\nbogus = 1\n").unwrap();
    let out = ckn(&["constants", "--config", "bad.toml"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bogus"), "error should name the unknown key: {err}");
}

#[test]
fn inadmissible_parameters_are_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = ckn(
        &["constants", "--n", "3", "--gamma", "0.5", "--alpha", "-1.0", "--beta", "-0.9"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("alpha"), "error should cite the constraint: {err}");
}

#[test]
fn solve_at_the_hardy_endpoint_steers_to_hardy_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = ckn(
        &["solve", "--n", "3", "--gamma", "0.5", "--alpha", "0.3", "--beta", "0.8"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("hardy-check"), "should steer to hardy-check: {err}");
}

#[test]
fn computational_failure_reports_json_and_exit_one() {
    // a grid far too short for the profile's tail trips the boundary check
    let dir = tempfile::tempdir().unwrap();
    let out = ckn(
        &[&["solve", "--T", "6", "--N", "64", "--output-dir", "o"], PARAMS].concat(),
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("error").is_some(), "stdout must carry a JSON error report");
    assert!(!dir.path().join("o").join("solution.csv").exists(), "no partial outputs");
}

#[test]
fn empty_sweep_writes_header_only_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(
        &cfg,
        "n = 3\ngamma = 0.5\nalpha = 0.3\nbeta = 0.5\n\
         [sweep]\nalpha = { min = 0.1, max = 0.2, count = 0 }\n\
         beta = { min = 0.3, max = 0.4, count = 0 }\n",
    )
    .unwrap();
    let out = ckn(&["sweep", "--config", "sweep.toml", "--output-dir", "out"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("out/sweep.csv")).unwrap();
    assert_eq!(
        csv,
        "alpha,beta,p,R,lambda0,lambda1,verdict,sigma0,decay_fit,converged\n"
    );
}

#[test]
fn roots_csv_has_schema_and_exact_unweighted_root() {
    let dir = tempfile::tempdir().unwrap();
    let out = ckn(
        &["roots", "--n", "3", "--gamma", "0.5", "--alpha", "0", "--beta", "0",
          "--count", "2", "--output-dir", "out"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("out/roots.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("j,tau,sigma,residual"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    let sigma: f64 = first[2].parse().unwrap();
    // alpha = 0: principal root is exactly (n - 2 gamma) / 2 = 1
    assert!((sigma - 1.0).abs() < 1e-8, "sigma_0 = {sigma}");
}

#[test]
fn symbol_files_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args: Vec<&str> = [&["symbol", "--N", "64", "--modes", "2"][..], PARAMS].concat();
    let run = |out: &str| {
        let mut a = args.clone();
        a.extend_from_slice(&["--output-dir", out]);
        let o = ckn(&a, dir.path());
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(dir.path().join(out).join("symbol.csv")).unwrap()
    };
    let a = run("o1");
    let b = run("o2");
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("xi,theta_m0,theta_m1\n"));
    assert_eq!(text.lines().count(), 65, "one row per grid frequency");
    assert!(!text.contains('\r'), "LF line endings only");
}

#[test]
fn output_dir_falls_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let envdir = dir.path().join("envout");
    let out = Command::new(env!("CARGO_BIN_EXE_ckn"))
        .args([&["symbol", "--N", "64"][..], PARAMS].concat())
        .current_dir(dir.path())
        .env("CKN_OUTPUT_DIR", &envdir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(envdir.join("symbol.csv").exists());
}

#[test]
fn missing_parameters_are_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = ckn(&["constants", "--n", "3", "--gamma", "0.5"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("alpha"), "names the missing parameter: {err}");
}
