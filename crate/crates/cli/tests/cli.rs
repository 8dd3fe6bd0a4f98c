//! End-to-end tests of the command-line interface: exit codes, report
//! determinism, and the failure paths.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_selfdual"))
}

fn write_config(dir: &std::path::Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const BASE: &str = r#"
[monopoles]
heights = [1.0, 2.0]
[twistor]
lambda = 1.75
[run]
seed = 42
"#;

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("selfdual-cli-test-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn fast_suites_pass_with_exit_zero() {
    let dir = tmpdir("pass");
    let cfg = write_config(
        &dir,
        "ok.toml",
        &format!("{BASE}\n[run.ignored]\n").replace("\n[run.ignored]\n", ""),
    );
    let out = run(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--suite",
        "connection-identity",
        "--suite",
        "einstein-weyl",
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["pass"], serde_json::json!(true));
    assert_eq!(report["results"]["suites"].as_array().unwrap().len(), 2);
}

#[test]
fn default_config_full_run_passes() {
    // two points at heights 1 and 2, modulus 7/4, all seven suites
    let cfg = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/default.toml");
    let out = run(&["verify", "--config", cfg.to_str().unwrap(), "--exact-mode"]);
    assert!(
        out.status.success(),
        "full default run failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["pass"], serde_json::json!(true));
    assert_eq!(report["results"]["suites"].as_array().unwrap().len(), 7);
}

#[test]
fn lambda_out_of_range_is_usage_error() {
    let dir = tmpdir("lambda");
    let cfg = write_config(&dir, "bad.toml", &BASE.replace("1.75", "2.5"));
    let out = run(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "expected usage error");
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambda"));
}

#[test]
fn malformed_config_is_usage_error() {
    let dir = tmpdir("malformed");
    let cfg = write_config(&dir, "broken.toml", "this is not toml [");
    let out = run(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_seed_is_usage_error() {
    let dir = tmpdir("seed");
    let cfg = write_config(&dir, "noseed.toml", &BASE.replace("seed = 42", ""));
    let out = run(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn broken_tolerance_fails_with_witness_and_exit_one() {
    let dir = tmpdir("tolerance");
    let cfg = write_config(
        &dir,
        "tight.toml",
        &format!("{BASE}\n[tolerances]\ntol_curv = 1e-30\n"),
    );
    let out = run(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--suite",
        "curvature",
    ]);
    assert_eq!(out.status.code(), Some(1), "expected suite failure");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["pass"], serde_json::json!(false));
    let witnesses = report["results"]["suites"][0]["witnesses"]
        .as_array()
        .unwrap();
    assert!(!witnesses.is_empty(), "failure must carry witnesses");
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let dir = tmpdir("determinism");
    let cfg = write_config(&dir, "det.toml", BASE);
    let strip_timing = |bytes: &[u8]| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    let args = [
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--suite",
        "connection-identity",
        "--suite",
        "involution-group",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success() && b.status.success());
    let ja = strip_timing(&a.stdout);
    let jb = strip_timing(&b.stdout);
    assert_eq!(
        serde_json::to_string(&ja).unwrap(),
        serde_json::to_string(&jb).unwrap(),
        "report bodies must be byte-identical once timing is removed"
    );
    // a different seed changes the body but not the verdict
    let c = run(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--suite",
        "connection-identity",
        "--suite",
        "involution-group",
        "--seed",
        "43",
    ]);
    assert!(c.status.success());
}

#[test]
fn report_file_written_when_requested() {
    let dir = tmpdir("reportfile");
    let cfg = write_config(&dir, "cfg.toml", BASE);
    let report_path = dir.join("out.json");
    let out = run(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--suite",
        "einstein-weyl",
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&report_path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["results"]["pass"], serde_json::json!(true));
}

#[test]
fn suites_catalogue_is_stable_and_machine_readable() {
    let a = run(&["suites"]);
    let b = run(&["suites"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "catalogue must be stable across runs");
    let text = String::from_utf8_lossy(&a.stdout);
    for name in [
        "connection-identity",
        "curvature",
        "conformality",
        "involution-group",
        "twistor-classification",
        "resolution-lift",
        "einstein-weyl",
    ] {
        assert!(text.contains(name), "missing suite {name}");
    }
    let m = run(&["suites", "--machine"]);
    let v: serde_json::Value = serde_json::from_slice(&m.stdout).unwrap();
    assert_eq!(v["suites"].as_array().unwrap().len(), 7);
    // every suite maps to a statement
    for s in v["suites"].as_array().unwrap() {
        assert!(!s["statement"].as_str().unwrap().is_empty());
    }
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["verify", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}
