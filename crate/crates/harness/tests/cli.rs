//! End-to-end CLI behavior: subcommands, exit codes, trace files, batches.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn orbitsum(args: &[&str], cwd: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbitsum"));
    cmd.args(args);
    if let Some(dir) = cwd {
        cmd.current_dir(dir);
    }
    cmd.output().expect("failed to spawn orbitsum")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn list_prints_every_fixture() {
    let out = orbitsum(&["list"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["banach-half", "km-rotation-quarter", "caristi-shift-negative"] {
        assert!(text.lines().any(|l| l == name), "missing {name}");
    }
    assert_eq!(text.lines().count(), orbitsum_harness::FIXTURES.len());
}

#[test]
fn run_accepts_registry_names_and_reports() {
    let out = orbitsum(&["run", "banach-half"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict: CONVERGED"));
    assert!(text.contains("expected: PASS"));
}

#[test]
fn run_unknown_target_is_a_config_error() {
    let out = orbitsum(&["run", "no-such-problem"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_malformed_config_file_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"name\": \"x\"").unwrap();
    let out = orbitsum(&["run", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_writes_trace_files_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("traces");
    let out = orbitsum(
        &["run", "prox-l1", "--out", out_dir.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(out_dir.join("prox-l1.csv")).unwrap();
    assert!(csv.starts_with("n,gap,partial_sum,ratio,residual"));

    let out = orbitsum(
        &[
            "run",
            "prox-l1",
            "--out",
            out_dir.to_str().unwrap(),
            "--format",
            "json",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("prox-l1.json")).unwrap()).unwrap();
    assert_eq!(doc["stop"], "gap-exactly-zero");
}

#[test]
fn verify_passes_fixtures_and_suite_is_green() {
    let out = orbitsum(&["verify", "caristi-shift-negative"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[PASS]"));

    let out = orbitsum(&["suite"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("13/13 fixtures passed"), "suite output: {text}");
}

#[test]
fn batch_files_run_every_listed_problem() {
    let dir = tempfile::tempdir().unwrap();
    let single = |name: &str| {
        let text = orbitsum_harness::FIXTURES
            .iter()
            .find(|(n, _)| *n == name)
            .unwrap()
            .1;
        let path = dir.path().join(format!("{name}.json"));
        fs::write(&path, text).unwrap();
        format!("{name}.json")
    };
    let a = single("shift-by-one");
    let b = single("fb-box-quadratic");
    let batch = dir.path().join("batch.json");
    fs::write(&batch, serde_json::to_string(&vec![a, b]).unwrap()).unwrap();
    let out = orbitsum(&["verify", batch.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("[PASS] shift-by-one"));
    assert!(text.contains("[PASS] fb-box-quadratic"));
}

#[test]
fn verify_flags_a_perturbed_fixed_point_baseline() {
    let dir = tempfile::tempdir().unwrap();
    let text = orbitsum_harness::FIXTURES
        .iter()
        .find(|(n, _)| *n == "fb-box-quadratic")
        .unwrap()
        .1;
    let mut config: serde_json::Value = serde_json::from_str(text).unwrap();
    config["expected"]["fixed_point"] = serde_json::json!([0.5, 1.0]);
    let path = dir.path().join("wrong.json");
    fs::write(&path, config.to_string()).unwrap();
    let out = orbitsum(&["verify", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL]"));
}
