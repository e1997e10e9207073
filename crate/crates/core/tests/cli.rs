//! End-to-end runs of the `extremal` binary.

use std::fs;
use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_extremal"));
    c.env_remove("EXTREMAL_OUT_DIR");
    c
}

#[test]
fn verify_small_experiment_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"experiment":"sticky_theorem","seed":4,"replicas":25}"#).unwrap();
    let out = bin().args(["verify", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS sticky_theorem"));
    assert!(dir.path().join("sticky_theorem.json").exists());
    assert!(dir.path().join("sticky_theorem_clumps_vs_particles.csv").exists());
}

#[test]
fn failing_verdict_sets_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"experiment":"sticky_theorem","replicas":5,"min_pass_fraction":2.0}"#).unwrap();
    let out = bin().args(["verify", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_config_is_an_error() {
    let out = bin().args(["verify", "--experiment", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown experiment"));
}

#[test]
fn simulate_then_hull() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(
        &spec,
        r#"{"process":"levy","horizon":[0,1],"epsilon":0.01,
            "measure":{"components":[{"family":"stable_like","c_plus":1,"c_minus":1,"alpha":0.5}]}}"#,
    )
    .unwrap();
    let out = bin().args(["simulate", "--seed", "3", "--config"]).arg(&spec).output().unwrap();
    assert!(out.status.success());
    let path = dir.path().join("path.json");
    fs::write(&path, &out.stdout).unwrap();
    let again = bin().args(["simulate", "--seed", "3", "--config"]).arg(&spec).output().unwrap();
    assert_eq!(out.stdout, again.stdout);

    let hull_dir = dir.path().join("hull");
    let st = bin().args(["hull", "--format", "csv", "--config"]).arg(&path).arg("--out").arg(&hull_dir).status().unwrap();
    assert!(st.success());
    let maj = fs::read_to_string(hull_dir.join("majorant.csv")).unwrap();
    assert!(maj.starts_with("t,value\n0,"));
    let ext = fs::read_to_string(hull_dir.join("extremal_superior.csv")).unwrap();
    assert!(ext.starts_with("t,is_jump,is_T\n"));
    assert!(ext.contains(",true\n"));

    let b = bin().args(["burgers", "--t", "2", "--format", "csv", "--config"]).arg(&path).env("EXTREMAL_OUT_DIR", dir.path().join("b")).status().unwrap();
    assert!(b.success());
    assert!(fs::read_to_string(dir.path().join("b/shocks.csv")).unwrap().starts_with("a_left,a_right,x,mass"));
    assert!(fs::read_to_string(dir.path().join("b/potential.csv")).unwrap().starts_with("x,psi"));

    let d = bin().args(["drift", "--drift", r#"{"kind":"parabolic_burgers","t":1}"#, "--config"]).arg(&path).output().unwrap();
    assert!(d.status.success(), "{}", String::from_utf8_lossy(&d.stderr));
    let v: serde_json::Value = serde_json::from_slice(&d.stdout).unwrap();
    assert!(v["isolation"].as_array().is_some());
}

#[test]
fn sticky_hand_case() {
    let out = bin().args(["sticky", "--velocities", "0.6,1,0", "--format", "csv"]).output().unwrap();
    assert!(out.status.success());
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("t,left_index,x,mass_new,v_new"));
    assert!(s.contains("[[0,2]]"));
}
