use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bifurcate_core::reduction::ReducedVectorField;
use tempfile::TempDir;

fn bifurcate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bifurcate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.cfg");
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn reduce(dir: &Path, config: &str, extra: &[&str]) -> Output {
    let cfg = write_config(dir, config);
    let out = dir.join("out");
    let mut args = vec!["reduce", "--config", &cfg, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    bifurcate(&args)
}

#[test]
fn verify_reports_the_quintic_mismatch() {
    let o = bifurcate(&["verify"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("6/8 checks exact"));
    assert!(
        stderr(&o).contains("first mismatch: G1 s1^5"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn verify_at_cubic_order_is_exact() {
    let o = bifurcate(&["verify", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("6/6 checks exact"));
}

#[test]
fn verify_detects_a_perturbed_alpha() {
    let o = bifurcate(&["verify", "--perturb-alpha1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("first mismatch: alpha1"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn reduce_writes_the_cubic_coefficient() {
    let dir = TempDir::new().unwrap();
    let o = reduce(dir.path(), "lambda = 9\n", &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("out/reduced_field.json")).unwrap();
    assert!(
        text.contains(r#""a":3,"b":0,"num":"-3","den":"4""#),
        "{text}"
    );
    assert!(text.contains(r#""a":5,"b":0"#));
    assert!(dir.path().join("out/center_manifold.json").exists());
}

#[test]
fn reduce_order_three_has_no_quintic_terms() {
    let dir = TempDir::new().unwrap();
    let o = reduce(dir.path(), "lambda = 9\n", &["--order", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let field = ReducedVectorField::from_json(
        &fs::read_to_string(dir.path().join("out/reduced_field.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(field.order(), 3);
    assert!(field
        .g1()
        .keys()
        .chain(field.g2().keys())
        .all(|m| m.degree() == 3));
}

#[test]
fn reduce_off_criticality_has_a_linear_term() {
    let dir = TempDir::new().unwrap();
    let o = reduce(dir.path(), "lambda = 9.3\n", &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("out/reduced_field.json")).unwrap();
    assert!(
        text.contains(r#""a":1,"b":0,"num":"3","den":"10""#),
        "{text}"
    );
}

#[test]
fn reduce_is_idempotent_and_round_trips() {
    let dir = TempDir::new().unwrap();
    assert!(reduce(dir.path(), "lambda = 9\n", &[]).status.success());
    let first = fs::read(dir.path().join("out/reduced_field.json")).unwrap();
    let first_psi = fs::read(dir.path().join("out/center_manifold.json")).unwrap();
    assert!(reduce(dir.path(), "lambda = 9\n", &[]).status.success());
    assert_eq!(
        fs::read(dir.path().join("out/reduced_field.json")).unwrap(),
        first
    );
    assert_eq!(
        fs::read(dir.path().join("out/center_manifold.json")).unwrap(),
        first_psi
    );

    let text = String::from_utf8(first).unwrap();
    let field = ReducedVectorField::from_json(&text).unwrap();
    let again = serde_json::to_string(&field.to_record()).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn bad_configs_fail_without_writing() {
    for bad in [
        "lamda = 9\n",
        "lambda 9\n",
        "lambda = \n",
        "lambda = 9\nlambda = 9.1\n",
        "order = 4\n",
        "lambda = x\n",
    ] {
        let dir = TempDir::new().unwrap();
        let o = reduce(dir.path(), bad, &[]);
        assert_eq!(o.status.code(), Some(2), "{bad:?}: {}", stderr(&o));
        assert!(!dir.path().join("out").exists(), "{bad:?} created output");
    }
}

const FAST_SWEEP: &str = "lambdas = 8.5, 9.0, 9.2, 9.5\ntruncation = 8\ndt = 0.05\nt_end = 300\n";

fn sweep(dir: &Path, seed: &str) -> String {
    let cfg = write_config(dir, FAST_SWEEP);
    let out = dir.join("out");
    let o = bifurcate(&[
        "sweep",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
        "--seed",
        seed,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    fs::read_to_string(out.join("sweep.csv")).unwrap()
}

#[test]
fn sweep_writes_one_row_per_lambda() {
    let dir = TempDir::new().unwrap();
    let csv = sweep(dir.path(), "3");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("lambda,dist_H,"));
    assert!(lines[4].contains("repeller-like"));
    let summary: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("out/sweep_summary.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(summary["config"]["ic_seed"], "3");
    assert_eq!(summary["rows"].as_array().unwrap().len(), 4);
    assert!(summary["version"].as_str().unwrap().starts_with("0.1.0"));
}

#[test]
fn sweep_is_deterministic_for_a_seed() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    assert_eq!(sweep(a.path(), "11"), sweep(b.path(), "11"));
}

#[test]
fn simulate_lyapunov_column_decreases() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "lambda = 9.2\ntruncation = 16\ndt = 0.01\nt_end = 30\nrecord_every = 100\nu0 = 0.1*sin2x + 0.05*cos6x\n",
    );
    let out = dir.path().join("out");
    let o = bifurcate(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,norm,V"));
    let v: Vec<f64> = lines
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(v.len(), 31);
    assert!(v.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{v:?}");
}

#[test]
fn simulate_rejects_bad_initial_state() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "u0 = 0.1*sin3x\n");
    let out = dir.path().join("out");
    let o = bifurcate(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(!out.exists());
}

#[test]
fn classify_straddles_criticality() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "lambdas = 8.9, 9.1\n");
    let out = dir.path().join("out");
    let o = bifurcate(&["classify", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("classify.json")).unwrap()).unwrap();
    assert_eq!(rows[0]["verdict"], "attractor-like");
    assert!(rows[0]["r_star"].is_null());
    assert_eq!(rows[1]["verdict"], "repeller-like");
    let r = rows[1]["r_star"].as_f64().unwrap();
    assert!((r - (0.4f64 / 3.0).sqrt()).abs() < 1e-3, "{r}");
}
