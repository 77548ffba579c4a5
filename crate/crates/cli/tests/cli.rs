use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use burgers_cli::config::{parse, EvalConfig, EvolveConfig};
use burgers_cli::csvio::read_rows;
use burgers_cli::CliError;
use proptest::prelude::*;
use serde_json::{json, Value};
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str], config: Option<&Value>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_burgers"));
    cmd.args(args).arg("--out").arg(dir.join("out"));
    if let Some(c) = config {
        let path = dir.join("config.json");
        std::fs::write(&path, serde_json::to_string_pretty(c).unwrap()).unwrap();
        cmd.arg("--config").arg(&path);
    }
    cmd.output().unwrap()
}

fn out_file(dir: &Path, name: &str) -> PathBuf {
    dir.join("out").join(name)
}

fn column(rows: &[Vec<f64>], c: usize) -> Vec<f64> {
    rows.iter().map(|r| r[c]).collect()
}

fn eval_config(solution: Value, include_w: bool) -> Value {
    json!({
        "schema_version": 1,
        "solution": solution,
        "grid": {"half_width": 5.0, "num_points": 11},
        "include_w": include_w
    })
}

#[test]
fn eval_steady_profile_is_even() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["eval"], Some(&eval_config(json!({"kind": "steady", "alpha": 1.0}), false)));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_rows(&out_file(dir.path(), "eval.csv")).unwrap();
    assert_eq!(header, ["xi", "omega"]);
    assert_eq!(rows.len(), 11);
    let omega = column(&rows, 1);
    for i in 0..11 {
        assert_eq!(omega[i], omega[10 - i]);
    }
    let text = std::fs::read_to_string(out_file(dir.path(), "eval.csv")).unwrap();
    assert!(text.starts_with("# burgers eval\n"));
}

#[test]
fn eval_first_mode_is_odd() {
    let dir = TempDir::new().unwrap();
    let cfg = eval_config(json!({"kind": "eigenmode", "n": 1, "alpha": 1.0}), false);
    assert!(run(dir.path(), &["eval"], Some(&cfg)).status.success());
    let (_, rows) = read_rows(&out_file(dir.path(), "eval.csv")).unwrap();
    let omega = column(&rows, 1);
    for i in 0..11 {
        assert_eq!(omega[i], -omega[10 - i]);
    }
    assert_eq!(omega[5], 0.0);
}

#[test]
fn eval_axial_velocity_is_odd_with_zero_gauge() {
    let dir = TempDir::new().unwrap();
    let cfg = eval_config(json!({"kind": "steady", "alpha": 1.0}), true);
    assert!(run(dir.path(), &["eval"], Some(&cfg)).status.success());
    let (header, rows) = read_rows(&out_file(dir.path(), "eval.csv")).unwrap();
    assert_eq!(header, ["xi", "omega", "w"]);
    let w = column(&rows, 2);
    assert_eq!(w[5], 0.0);
    for i in 0..11 {
        assert!((w[i] + w[10 - i]).abs() < 1e-10);
    }
    // W(5) ≈ ∫₀^∞ e^{−ξ²/2} = √(π/2)
    assert!((w[10] - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-5);
}

fn evolve_config(initial: Value) -> Value {
    json!({
        "schema_version": 1,
        "equation": {"kind": "similarity", "alpha": 1.0},
        "initial": initial,
        "end_time": 1.0,
        "snapshot_times": [0.5, 1.0],
        "norm_samples": 11
    })
}

#[test]
fn evolve_zero_data_stays_zero() {
    let dir = TempDir::new().unwrap();
    let cfg = evolve_config(json!({"kind": "zero", "grid": {"half_width": 10.0, "num_points": 201}}));
    assert!(run(dir.path(), &["evolve"], Some(&cfg)).status.success());
    for name in ["snapshot_000.csv", "snapshot_001.csv"] {
        let (header, rows) = read_rows(&out_file(dir.path(), name)).unwrap();
        assert_eq!(header, ["coordinate", "omega"]);
        assert!(column(&rows, 1).iter().all(|v| *v == 0.0));
    }
}

fn mode_one_config() -> Value {
    evolve_config(json!({
        "kind": "solution",
        "solution": {"kind": "eigenmode", "n": 1, "alpha": 1.0},
        "grid": {"half_width": 10.0, "num_points": 401}
    }))
}

#[test]
fn evolve_first_mode_decays_by_one_e_fold() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["evolve"], Some(&mode_one_config()));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_rows(&out_file(dir.path(), "norms.csv")).unwrap();
    assert_eq!(header, ["time", "l2", "linf"]);
    assert_eq!(rows.len(), 11);
    let ratio = rows[10][1] / rows[0][1];
    assert!((ratio - (-1f64).exp()).abs() < 1e-3, "{ratio}");
}

#[test]
fn evolve_is_byte_identical_on_repeat() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    assert!(run(a.path(), &["evolve"], Some(&mode_one_config())).status.success());
    assert!(run(b.path(), &["evolve"], Some(&mode_one_config())).status.success());
    for name in ["snapshot_000.csv", "snapshot_001.csv", "norms.csv"] {
        assert_eq!(
            std::fs::read(out_file(a.path(), name)).unwrap(),
            std::fs::read(out_file(b.path(), name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn snapshot_reingestion_is_exact() {
    let dir = TempDir::new().unwrap();
    assert!(run(dir.path(), &["evolve"], Some(&mode_one_config())).status.success());
    let first = out_file(dir.path(), "snapshot_000.csv");
    let again = dir.path().join("again");
    std::fs::create_dir(&again).unwrap();
    let cfg = json!({
        "schema_version": 1,
        "equation": {"kind": "similarity", "alpha": 1.0},
        "initial": {"kind": "csv", "path": first},
        "end_time": 0.0,
        "snapshot_times": [0.0],
        "norm_samples": 0
    });
    assert!(run(&again, &["evolve"], Some(&cfg)).status.success());
    let (_, before) = read_rows(&first).unwrap();
    let (_, after) = read_rows(&again.join("out").join("snapshot_000.csv")).unwrap();
    assert_eq!(before.len(), after.len());
    for (x, y) in before.iter().zip(&after) {
        assert_eq!(x[0].to_bits(), y[0].to_bits());
        assert_eq!(x[1].to_bits(), y[1].to_bits());
    }
}

#[test]
fn spectrum_exit_codes_and_flags() {
    let dir = TempDir::new().unwrap();
    let ok = run(dir.path(), &["spectrum"], Some(&json!({"schema_version": 1, "alpha": 1.0, "k": 4})));
    assert!(ok.status.success());
    let report: Value = serde_json::from_slice(&std::fs::read(out_file(dir.path(), "spectrum.json")).unwrap()).unwrap();
    assert_eq!(report["computed"].as_array().unwrap().len(), 4);

    let growing = run(dir.path(), &["spectrum"], Some(&json!({"schema_version": 1, "alpha": 0.5, "k": 1})));
    assert!(growing.status.success());
    assert!(String::from_utf8_lossy(&growing.stdout).contains("growing mode"));

    let empty = run(dir.path(), &["spectrum"], Some(&json!({"schema_version": 1, "alpha": 1.0, "k": 0})));
    assert!(empty.status.success());

    // a threshold tighter than the discretisation error fails with code 1
    let strict = run(
        dir.path(),
        &["spectrum", "--tolerance", "1e-20"],
        Some(&json!({"schema_version": 1, "alpha": 0.5, "k": 3})),
    );
    assert_eq!(strict.status.code(), Some(1));
}

fn crosscheck_config(strain: Value, t_end: f64) -> Value {
    json!({"schema_version": 1, "strain": strain, "nu": 1.0, "mode_n": 0, "t_end": t_end, "num_points": 801})
}

#[test]
fn crosscheck_verdicts() {
    let dir = TempDir::new().unwrap();
    let degenerate = run(
        dir.path(),
        &["crosscheck"],
        Some(&crosscheck_config(json!({"kind": "constant", "gamma0": 1.0}), 0.5)),
    );
    assert!(degenerate.status.success());
    assert!(String::from_utf8_lossy(&degenerate.stdout).contains("degenerate at c1=0"));

    let winner = run(
        dir.path(),
        &["crosscheck"],
        Some(&crosscheck_config(json!({"kind": "rational", "c1": -0.5, "c2": -1.0}), 1.0)),
    );
    assert!(winner.status.success());
    let report: Value = serde_json::from_slice(&std::fs::read(out_file(dir.path(), "crosscheck.json")).unwrap()).unwrap();
    assert_eq!(report["verdict"], json!({"kind": "winner", "alpha": 1.5}));
    let disc: Value = serde_json::from_slice(&std::fs::read(out_file(dir.path(), "discrepancy.json")).unwrap()).unwrap();
    assert_eq!(disc["items"].as_array().unwrap().len(), 4);

    let horizon = run(
        dir.path(),
        &["crosscheck"],
        Some(&crosscheck_config(json!({"kind": "rational", "c1": 0.5, "c2": -1.0}), 2.0)),
    );
    assert_eq!(horizon.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&horizon.stderr).contains("horizon"));
}

#[test]
fn validation_failures_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = run(
        dir.path(),
        &["eval"],
        Some(&json!({"schema_version": 1, "solution": {"kind": "steady", "alpha": 1.0},
                     "grid": {"half_width": 5.0, "num_points": 10}})),
    );
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("`grid`"));

    let missing = run(dir.path(), &["eval"], None);
    assert_eq!(missing.status.code(), Some(2));

    let threads = run(dir.path(), &["accept", "--threads", "0"], None);
    assert_eq!(threads.status.code(), Some(2));

    let unknown = run(dir.path(), &["frobnicate"], None);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn specfun_check_and_convergence_pass() {
    let dir = TempDir::new().unwrap();
    let s = run(dir.path(), &["specfun-check"], None);
    assert!(s.status.success(), "{}", String::from_utf8_lossy(&s.stdout));
    assert!(out_file(dir.path(), "specfun.json").exists());
    let c = run(dir.path(), &["convergence"], None);
    assert!(c.status.success(), "{}", String::from_utf8_lossy(&c.stdout));
    let report: Value = serde_json::from_slice(&std::fs::read(out_file(dir.path(), "convergence.json")).unwrap()).unwrap();
    assert_eq!(report["spatial"]["errors"].as_array().unwrap().len(), 3);
}

fn leaves(v: &Value, path: Vec<String>, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| {
            let mut p = path.clone();
            p.push(k.clone());
            leaves(x, p, out)
        }),
        _ => out.push(path),
    }
}

fn set(v: &mut Value, path: &[String], new: Value) {
    let mut cur = v;
    for k in path {
        cur = cur.get_mut(k).unwrap();
    }
    *cur = new;
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Any leaf replaced by a value of the wrong type is rejected during
    /// parsing, before a solution or grid is built.
    #[test]
    fn type_mismatches_are_rejected(which in 0usize..64, replacement in 0usize..5, evolve in any::<bool>()) {
        let base = if evolve { mode_one_config() } else { eval_config(json!({"kind": "steady", "alpha": 1.0}), true) };
        let mut paths = Vec::new();
        leaves(&base, Vec::new(), &mut paths);
        let path = &paths[which % paths.len()];
        let original = base.pointer(&format!("/{}", path.join("/"))).unwrap().clone();
        let bad = [json!("x"), json!(true), json!([1]), json!({"a": 1}), json!(null)][replacement].clone();
        prop_assume!(bad != original && !(original.is_array() && bad.is_array()));
        let mut cfg = base.clone();
        set(&mut cfg, path, bad);
        let text = cfg.to_string();
        let rejected = if evolve {
            matches!(parse::<EvolveConfig>(&text), Err(CliError::Validation(_)))
        } else {
            matches!(parse::<EvalConfig>(&text), Err(CliError::Validation(_)))
        };
        prop_assert!(rejected, "accepted {}", text);
    }
}
