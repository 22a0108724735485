//! End-to-end tests of the binary: exit codes, output determinism, config
//! handling, and the documented JSON shapes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn hs2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hs2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

const CASE_II2: [&str; 14] = [
    "--N", "3", "--s", "1", "--alpha", "2", "--beta", "2", "--lambda", "2", "--mu", "1",
    "--kappa", "1",
];

#[test]
fn classify_reports_the_expected_row() {
    let mut args = vec!["classify"];
    args.extend_from_slice(&CASE_II2);
    let out = hs2(&args);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["classification"]["case"], "II.2");
    assert_eq!(v["classification"]["iota"], 0.5);
    assert_eq!(v["classification"]["minimizers"]["points"][0]["t"], 0.0);
}

#[test]
fn best_constant_kappa_nonpositive() {
    let out = hs2(&[
        "best-constant", "--N", "3", "--s", "1", "--alpha", "2", "--beta", "2", "--lambda", "3",
        "--mu", "1", "--kappa", "-1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let best = v["best_constant"].as_f64().unwrap();
    let ms = v["mu_s"].as_f64().unwrap();
    let want = 3.0_f64.powf(-0.5) * ms;
    assert!((best - want).abs() < 1e-12 * want);
}

#[test]
fn identical_argv_gives_byte_identical_output() {
    let mut args = vec!["classify"];
    args.extend_from_slice(&CASE_II2);
    let a = hs2(&args);
    let b = hs2(&args);
    assert_eq!(a.stdout, b.stdout);

    let args = ["ineq-test", "--case", "L2_BOTH_LT2", "--samples", "20000", "--seed", "7"];
    let a = hs2(&args);
    let b = hs2(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn domain_errors_exit_one() {
    // alpha + beta != 2*(s)
    let out = hs2(&[
        "classify", "--N", "3", "--s", "1", "--alpha", "2", "--beta", "1.5", "--lambda", "1",
        "--mu", "1", "--kappa", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("alpha+beta"), "stderr: {err}");
}

#[test]
fn usage_errors_exit_sixty_four() {
    let out = hs2(&["classify", "--bogus-flag", "1"]);
    assert_eq!(out.status.code(), Some(64));
    // missing parameters are usage errors as well
    let out = hs2(&["classify", "--N", "3"]);
    assert_eq!(out.status.code(), Some(64));
    // csv is rejected where no table exists
    let mut args = vec!["classify"];
    args.extend_from_slice(&CASE_II2);
    args.extend_from_slice(&["--format", "csv"]);
    let out = hs2(&args);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn sweep_case_preset_emits_csv_with_fitted_slopes() {
    let out = hs2(&["stability-sweep", "--case", "II.1", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("epsilon,deficit,distance"));
    assert_eq!(lines.count(), 12);

    let out = hs2(&["stability-sweep", "--case", "II.1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let slope_deficit = v["slope_deficit"].as_f64().unwrap();
    let slope_distance = v["slope_distance"].as_f64().unwrap();
    assert!((slope_deficit - 4.0).abs() <= 0.10, "{slope_deficit}");
    assert!((slope_distance - 2.0).abs() <= 0.05, "{slope_distance}");
}

#[test]
fn sweep_accepts_infinite_t0() {
    let out = hs2(&[
        "stability-sweep", "--N", "3", "--s", "1", "--alpha", "2", "--beta", "2", "--lambda",
        "1", "--mu", "2", "--kappa", "1", "--t0", "inf",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["t0"], "inf");
    assert_eq!(v["case_label"], "II.3");
}

#[test]
fn config_file_supplies_params_and_flags_override() {
    let dir = std::env::temp_dir().join(format!("hs2-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join("params.conf");
    std::fs::write(&path, "N=3\ns=1\nalpha=2\nbeta=2\nlambda=2\nmu=1\nkappa=1\n").unwrap();
    let out = hs2(&["classify", "--config", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["classification"]["case"], "II.2");

    // a flag overrides the file: swapping lambda/mu mirrors the case
    let out = hs2(&[
        "classify", "--config", path.to_str().unwrap(), "--lambda", "1", "--mu", "2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["classification"]["case"], "II.3");

    // unknown keys are rejected
    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "N=3\nwhat=ever\n").unwrap();
    let out = hs2(&["classify", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn deficit_reports_manifold_distance_and_dumps_profiles() {
    let dir = std::env::temp_dir().join(format!("hs2-cli-prof-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dump = dir.join("pair.csv");
    let out = hs2(&[
        "deficit", "--N", "3", "--s", "1", "--alpha", "2", "--beta", "2", "--lambda", "1",
        "--mu", "1", "--kappa", "1", "--a", "1", "--b", "1", "--dump-profiles",
        dump.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    // (w, w) sits on the manifold for this instance
    assert!(v["report"]["deficit"].as_f64().unwrap().abs() <= 1e-7);
    assert!(v["manifold_distance"]["raw"].as_f64().unwrap() <= 1e-7);
    let table = std::fs::read_to_string(&dump).unwrap();
    assert!(table.starts_with("r,u,du,v,dv\n"));
    assert_eq!(table.lines().count(), 201);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn minimize_g_reports_constant_coupling_specially() {
    let out = hs2(&[
        "minimize-g", "--N", "3", "--s", "1", "--alpha", "2", "--beta", "2", "--lambda", "2",
        "--mu", "2", "--kappa", "1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["case"], "CONSTANT_G");
    // kappa <= 0 is a domain error for the minimizer search
    let out = hs2(&[
        "minimize-g", "--N", "3", "--s", "1", "--alpha", "2", "--beta", "2", "--lambda", "2",
        "--mu", "2", "--kappa", "-1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn transform_check_reports_zero_deficit_for_members() {
    let out = hs2(&[
        "transform-check", "--N", "3", "--s", "1", "--alpha", "2", "--beta", "2", "--lambda",
        "1", "--mu", "1", "--kappa", "1", "--ell", "0.5", "--a", "1", "--b", "1",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert!(v["report"]["deficit_ell"].as_f64().unwrap().abs() <= 1e-7);
}

#[test]
fn ineq_test_single_case_reports_hull() {
    let out = hs2(&["ineq-test", "--case", "L2_BOTH_LT2", "--samples", "20000"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["total_violations"], 0);
    assert_eq!(v["results"][0]["convex_hull_feasible"], true);
    // unknown case name
    let out = hs2(&["ineq-test", "--case", "L9"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join(format!("hs2-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let mut args = vec!["classify"];
    args.extend_from_slice(&CASE_II2);
    args.extend_from_slice(&["--output", path.to_str().unwrap()]);
    let out = hs2(&args);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).expect("json");
    assert_eq!(v["classification"]["case"], "II.2");
    let _ = std::fs::remove_dir_all(&dir);
}
