//! End-to-end checks of the command-line surface and its wire formats.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cohomolocal"))
}

fn write_spec(dir: &tempfile::TempDir, name: &str, json: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, json).unwrap();
    path
}

const WITNESS_SPEC: &str =
    r#"{"p": 2, "l": 2, "n": 2, "generators": [[1, 2, 0, 1], [3, 1, 0, 1]]}"#;

#[test]
fn group_info_reports_order_and_scalars() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "witness.json", WITNESS_SPEC);
    let out = bin().args(["group", "info"]).arg(&spec).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 4);
    assert_eq!(v["q"], 4);
    assert_eq!(v["contains_scalar"], serde_json::Value::Null);
}

#[test]
fn group_sylow_returns_a_subgroup_spec() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        &dir,
        "sl23.json",
        r#"{"p": 3, "l": 1, "n": 2, "generators": [[1, 1, 0, 1], [1, 0, 1, 1]]}"#,
    );
    let out = bin().args(["group", "sylow", "-p", "2"]).arg(&spec).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 8); // |SL2(3)| = 24 = 8 * 3
    assert_eq!(v["group"]["p"], 3);
}

#[test]
fn module_structure_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        &dir,
        "j3.json",
        r#"{"p": 3, "l": 1, "n": 2, "generators": [[1, 1, 0, 1]]}"#,
    );
    let out = bin().args(["module", "structure"]).arg(&spec).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "ReducibleIndecomposable");
}

#[test]
fn cohom_h1loc_with_oracle_cross_check() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "witness.json", WITNESS_SPEC);
    let out = bin().args(["cohom", "h1loc", "--oracle"]).arg(&spec).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["h1loc"], serde_json::json!([2]));
    assert_eq!(v["h1loc_oracle"], serde_json::json!([2]));
    assert!(v["witness_cocycle"].is_object());

    let out = bin().args(["cohom", "h1"]).arg(&spec).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["h1"], serde_json::json!([2]));
}

#[test]
fn construct_catalog_writes_entries() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("catalog.json");
    let out = bin()
        .args(["construct", "catalog", "-n", "2", "-p", "3", "-o"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let entries: serde_json::Value = serde_json::from_str(&text).unwrap();
    let arr = entries.as_array().unwrap();
    assert!(arr.iter().any(|e| e["name"] == "unitriangular-sylow"
        && e["expected_order"] == 3));
}

#[test]
fn campaign_run_exit_codes_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        &dir,
        "campaign.json",
        r#"{"kind": "oracle_equivalence", "sample_count": 8, "seed": 5,
            "caps": {"group_order_cap": 200}}"#,
    );
    let out1 = dir.path().join("r1.json");
    let out2 = dir.path().join("r2.json");
    let s1 = bin().args(["campaign", "run"]).arg(&spec).arg("-o").arg(&out1).output().unwrap();
    assert!(s1.status.success(), "stderr: {}", String::from_utf8_lossy(&s1.stderr));
    let s2 = bin().args(["campaign", "run"]).arg(&spec).arg("-o").arg(&out2).output().unwrap();
    assert!(s2.status.success());
    // byte-identical reports for identical specs
    assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out1).unwrap()).unwrap();
    assert_eq!(report["schema"], "cohomolocal/1");
    assert_eq!(report["verdict"], "pass");

    // --seed flag overrides the spec seed
    let out3 = dir.path().join("r3.json");
    let s3 = bin()
        .args(["campaign", "run"])
        .arg(&spec)
        .args(["-o"])
        .arg(&out3)
        .args(["--seed", "6"])
        .output()
        .unwrap();
    assert!(s3.status.success());
    assert_ne!(std::fs::read(&out1).unwrap(), std::fs::read(&out3).unwrap());
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_spec(&dir, "bad.json", r#"{"p": 4, "l": 1, "n": 2, "generators": []}"#);
    let out = bin().args(["group", "info"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("missing.json");
    let out = bin().args(["group", "info"]).arg(&missing).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    // SL2(5) has order 120; a cap of 50 must fail fatally
    let spec = write_spec(
        &dir,
        "sl25.json",
        r#"{"p": 5, "l": 1, "n": 2, "generators": [[1, 1, 0, 1], [1, 0, 1, 1]]}"#,
    );
    let out = bin()
        .args(["--element-cap", "50", "group", "info"])
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn element_cap_env_is_honored_with_flag_winning() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        &dir,
        "sl25.json",
        r#"{"p": 5, "l": 1, "n": 2, "generators": [[1, 1, 0, 1], [1, 0, 1, 1]]}"#,
    );
    let out = bin()
        .env("COHOM_ELEMENT_CAP", "50")
        .args(["group", "info"])
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // flag wins over the environment
    let out = bin()
        .env("COHOM_ELEMENT_CAP", "50")
        .args(["--element-cap", "1000", "group", "info"])
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn witness_fragment_without_oracle_flag() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "witness.json", WITNESS_SPEC);
    let out = bin().args(["cohom", "h1loc"]).arg(&spec).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["h1loc"], serde_json::json!([2]));
    assert!(v.get("h1loc_oracle").is_none());
}
