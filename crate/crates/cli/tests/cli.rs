//! End-to-end tests of the binary: exit codes, file formats, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qes-spectral"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("qes-spectral-test-{}-{}", std::process::id(), name));
    p
}

#[test]
fn spectrum_hahn_reports_known_eigenvalues() {
    let out = run(&["spectrum", "hahn", "--N", "3", "--gamma", "0.5", "--delta", "0.25"]);
    assert!(out.status.success(), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], serde_json::Value::Bool(true));
    let closed: Vec<f64> = doc["closed_form"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p[0].as_f64().unwrap())
        .collect();
    assert_eq!(closed, vec![0.0, 2.75, 7.5, 14.25]);
}

#[test]
fn spectrum_rejects_invalid_gamma_with_exit_2() {
    let out = run(&["spectrum", "hahn", "--N", "3", "--gamma", "-1", "--delta", "0"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn spectrum_qhahn_rou_passes() {
    let out = run(&[
        "spectrum",
        "qhahn-rou",
        "--N",
        "5",
        "--S",
        "1",
        "--a",
        "0.7",
        "--b",
        "0.2",
    ]);
    assert!(out.status.success(), "{out:?}");
}

#[test]
fn overtight_tolerance_fails_with_exit_1() {
    let out = run(&[
        "spectrum",
        "hahn",
        "--N",
        "8",
        "--gamma",
        "0.5",
        "--delta",
        "0.25",
        "--tolerance",
        "eigen=1e-18",
    ]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
}

#[test]
fn verify_hahn_passes_and_injected_error_fails() {
    let ok = run(&["verify", "hahn", "--N", "4", "--gamma", "0.5", "--delta", "0.25"]);
    assert!(ok.status.success(), "{ok:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert!(doc["checks"].as_array().unwrap().len() >= 5);

    let bad = run(&[
        "verify",
        "hahn",
        "--N",
        "4",
        "--gamma",
        "0.5",
        "--delta",
        "0.25",
        "--inject-error",
    ]);
    assert_eq!(bad.status.code(), Some(1), "{bad:?}");
}

#[test]
fn verify_reports_are_deterministic() {
    let args = [
        "verify",
        "qhahn-general",
        "--N",
        "4",
        "--q",
        "0.85",
        "--a",
        "0.9",
        "--b",
        "0.3",
        "--seed",
        "42",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn spectrum_report_round_trips() {
    let out = run(&["spectrum", "hahn", "--N", "6", "--gamma", "1.2", "--delta", "0.7"]);
    assert!(out.status.success());
    let report: qes_spectral::eigensolver::SpectrumReport =
        serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.recompute_passed(), report.passed);
}

#[test]
fn butterfly_small_csv_shape() {
    let path = tmp_path("butterfly.csv");
    let out = run(&["butterfly", "--max-N", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "flux_numerator,flux_denominator,flux_value,eigenvalue"
    );
    assert_eq!(lines.count(), 7);
    assert!(!text.contains('\r'));
    std::fs::remove_file(&path).ok();
}

#[test]
fn schrodinger_emits_grid_and_sidecar() {
    let path = tmp_path("schro.csv");
    let out = run(&[
        "schrodinger",
        "--N",
        "3",
        "--gamma",
        "-4.2",
        "--delta",
        "4",
        "--domain",
        "half",
        "--y-min",
        "0.05",
        "--y-max",
        "6",
        "--points",
        "80",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 81); // header + n_points rows
    assert!(text.starts_with("y,potential,psi_0"));

    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path.with_extension("csv.json")).unwrap())
            .unwrap();
    assert_eq!(sidecar["levels"][0]["half_line"], serde_json::Value::Bool(true));
    std::fs::remove_file(&path).ok();
    std::fs::remove_file(path.with_extension("csv.json")).ok();
}

#[test]
fn schrodinger_rejects_zero_y_min_with_exit_2() {
    let out = run(&[
        "schrodinger",
        "--N",
        "3",
        "--gamma",
        "-4.2",
        "--delta",
        "4",
        "--y-min",
        "0",
        "--y-max",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn env_seed_is_used_and_flag_wins() {
    let with_env = bin()
        .args(["spectrum", "hahn", "--N", "3", "--gamma", "0.5", "--delta", "0.25"])
        .env("QES_SPECTRAL_SEED", "7")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_str(&stdout(&with_env)).unwrap();
    assert_eq!(doc["metadata"]["seed"], serde_json::json!(7));

    let with_flag = bin()
        .args([
            "spectrum", "hahn", "--N", "3", "--gamma", "0.5", "--delta", "0.25", "--seed", "9",
        ])
        .env("QES_SPECTRAL_SEED", "7")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_str(&stdout(&with_flag)).unwrap();
    assert_eq!(doc["metadata"]["seed"], serde_json::json!(9));
}

#[test]
fn selftest_runs_clean_with_default_seed() {
    let path = tmp_path("selftest.json");
    let out = run(&["selftest", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert_eq!(text.matches("[PASS]").count(), 10, "{text}");
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["passed"], serde_json::Value::Bool(true));
    assert_eq!(doc["criteria"].as_array().unwrap().len(), 10);
    std::fs::remove_file(&path).ok();
}
