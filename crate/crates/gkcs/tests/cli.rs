//! End-to-end tests of the `gkcs` binary: exit-code contract, report
//! shape, file outputs and the config/flag precedence.

use std::path::PathBuf;
use std::process::{Command, Output};

fn gkcs() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gkcs"))
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("gkcs-e2e").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

#[test]
fn state_writes_ket_and_profile() {
    let dir = tmp_dir("state");
    let out = run(gkcs()
        .args(["state", "--model", "example1", "--j", "1.0"])
        .arg("--out-dir")
        .arg(&dir));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let ket_path = dir.join("ket.json");
    let csv_path = dir.join("ket_profile.csv");
    assert!(ket_path.exists() && csv_path.exists());
    // round trip through the file reproduces bit-identical coefficients
    let text = std::fs::read_to_string(&ket_path).unwrap();
    let ket: gkcs::states::LabeledKet = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string(&ket).unwrap();
    let ket2: gkcs::states::LabeledKet = serde_json::from_str(&again).unwrap();
    assert_eq!(ket, ket2);
    assert!(ket.norm() > 0.999);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("label_1,label_2,re,im,modulus2"));
}

#[test]
fn verify_pass_exit_zero() {
    let out = run(gkcs().args(["verify", "--model", "example1", "--suite", "resolution"]));
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("[PASS]"), "{stdout}");
}

#[test]
fn verify_numeric_failure_exit_one() {
    // an unmeetable tolerance turns quadrature rounding into a failure
    let out = run(gkcs().args([
        "verify",
        "--model",
        "example1",
        "--suite",
        "resolution",
        "--tol",
        "1e-18",
    ]));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL]"));
}

#[test]
fn config_error_exit_two() {
    let out = run(gkcs().args(["verify", "--model", "not-a-model"]));
    assert_eq!(out.status.code(), Some(2));
    let out = run(gkcs().args(["verify", "--model", "example1", "--suite", "not-a-suite"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let dir = tmp_dir("config");
    let cfg_path = dir.join("run.json");
    std::fs::write(&cfg_path, r#"{"model": "example1", "j": 1.0}"#).unwrap();
    let out = run(gkcs()
        .args(["state", "--json", "--j", "2.0"])
        .arg("--config")
        .arg(&cfg_path)
        .arg("--out-dir")
        .arg(&dir));
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid JSON report");
    assert_eq!(report["config"]["j"], serde_json::json!(2.0));
    assert_eq!(report["config"]["model"], serde_json::json!("example1"));
    // ⟨H⟩ follows the overriding J
    let energy = report["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == "energy_expectation")
        .unwrap();
    assert!((energy["value"].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn config_file_with_unknown_key_is_rejected() {
    let dir = tmp_dir("badconfig");
    let cfg_path = dir.join("bad.json");
    std::fs::write(&cfg_path, r#"{"model": "example1", "typo_key": true}"#).unwrap();
    let out = run(gkcs().args(["verify"]).arg("--config").arg(&cfg_path));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_report_carries_provenance() {
    let out = run(gkcs().args([
        "verify",
        "--model",
        "example3",
        "--suite",
        "resolution",
        "--json",
    ]));
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["operation"], serde_json::json!("verify"));
    assert_eq!(report["provenance"]["quad_nodes"], serde_json::json!(128));
    for r in report["results"].as_array().unwrap() {
        // every result is certified or labeled diagnostic
        assert!(
            r["bound"].is_number() || r["note"].as_str() == Some("diagnostic only") || r["note"].is_string(),
            "unlabeled result {r}"
        );
    }
}

#[test]
fn out_dir_env_var_is_honored() {
    let dir = tmp_dir("envvar");
    let out = run(gkcs()
        .args(["measure", "--model", "example2", "--n-max", "8"])
        .env("GKCS_OUT_DIR", &dir));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("measure.json").exists());
    let measure: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("measure.json")).unwrap()).unwrap();
    assert!(measure["density"]["laguerre"].is_array());
}

#[test]
fn explicit_spectrum_and_degeneracy_lists() {
    let dir = tmp_dir("explicit");
    let cfg_path = dir.join("explicit.json");
    std::fs::write(
        &cfg_path,
        r#"{
            "spectrum": {"omega": 2.0, "levels": [0.5, 1.5, 2.5, 3.5, 4.5, 5.5, 6.5, 7.5]},
            "degeneracy": [1, 2, 2, 2, 2, 2, 2, 2],
            "family": "degenerate",
            "j": 0.8
        }"#,
    )
    .unwrap();
    let out = run(gkcs()
        .args(["state", "--json"])
        .arg("--config")
        .arg(&cfg_path)
        .arg("--out-dir")
        .arg(&dir));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // the level list is shifted to zero before the state is built
    let ket: gkcs::states::LabeledKet =
        serde_json::from_str(&std::fs::read_to_string(dir.join("ket.json")).unwrap()).unwrap();
    assert_eq!(ket.params.recorded_shift, 0.5);
    assert_eq!(ket.params.omega, 2.0);
    assert!(report["results"][0]["pass"].as_bool().unwrap());
}

#[test]
fn model_card_lists_branch_structure() {
    let dir = tmp_dir("card");
    let out = run(gkcs()
        .args(["model-card", "--model", "boson-two-fermion", "--json"])
        .arg("--out-dir")
        .arg(&dir));
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let card = &report["results"][0]["value"];
    assert_eq!(card["spectral_table"].as_array().unwrap().len(), 4);
    assert!(dir.join("boson-two-fermion_card.json").exists());
}

#[test]
fn landau_suite_passes_end_to_end() {
    let dir = tmp_dir("landau");
    let out = run(gkcs()
        .args(["landau", "--truncation", "20", "--beta", "1.0"])
        .arg("--out-dir")
        .arg(&dir));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(dir.join("delta_spectrum.csv").exists());
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "verify", "--model", "example1", "--suite", "resolution", "--json",
    ];
    let a = run(gkcs().args(args));
    let b = run(gkcs().args(args));
    let mut ja: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let mut jb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    // timing differs between runs; everything else must be identical
    ja["timing_ms"] = serde_json::json!(0);
    jb["timing_ms"] = serde_json::json!(0);
    assert_eq!(ja, jb);
}
