use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jetforge_core::examples::{example_by_name, legendre_chart};
use jetforge_core::json::{chart_to_json, matrix_jet_from_json};
use serde_json::Value;

fn jetforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetforge"))
        .args(args)
        .env_remove("JETFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn legendre_file(dir: &Path) -> PathBuf {
    write(dir, "legendre.json", &chart_to_json(&legendre_chart()))
}

fn circle_file(dir: &Path) -> PathBuf {
    write(
        dir,
        "circle.json",
        r#"{"variables": ["x", "y"], "equations": ["x^2 + y^2 - 1"]}"#,
    )
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn jetspace_on_the_circle() {
    let dir = tempfile::tempdir().unwrap();
    let circle = circle_file(dir.path());
    let out = jetforge(&[
        "jetspace",
        "--scheme",
        circle.to_str().unwrap(),
        "-d",
        "1",
        "-r",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["equations"].as_array().unwrap().len(), 2);
    let uni = jetforge(&[
        "jetspace",
        "--scheme",
        circle.to_str().unwrap(),
        "-d",
        "1",
        "-r",
        "1",
        "--universal",
    ]);
    assert_eq!(uni.stdout, out.stdout);
}

#[test]
fn beta_on_legendre_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let conn = legendre_file(dir.path());
    let out = jetforge(&[
        "beta",
        "--connection",
        conn.to_str().unwrap(),
        "--jet",
        "1/2 + t1",
        "-r",
        "3",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let f = matrix_jet_from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(f.order(), 3);
    let oracle = jetforge(&[
        "beta",
        "--connection",
        conn.to_str().unwrap(),
        "--jet",
        "1/2 + t1",
        "-r",
        "3",
        "--oracle",
    ]);
    assert_eq!(oracle.stdout, out.stdout);
}

#[test]
fn verify_passes_and_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let conn = legendre_file(dir.path());
    let c = conn.to_str().unwrap();
    let a = jetforge(&[
        "verify",
        "--connection",
        c,
        "--max-order",
        "5",
        "--cases",
        "8",
        "--seed",
        "7",
    ]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stdout)
    );
    let b = jetforge(&[
        "verify",
        "--connection",
        c,
        "--max-order",
        "5",
        "--cases",
        "8",
        "--seed",
        "7",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_jetforge"))
        .args([
            "verify",
            "--connection",
            c,
            "--max-order",
            "5",
            "--cases",
            "8",
            "--seed",
            "1",
        ])
        .env("JETFORGE_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let circle = circle_file(dir.path());
    let s = circle.to_str().unwrap();
    let on = jetforge(&[
        "membership",
        "--scheme",
        s,
        "--jet",
        "1; t1",
        "-r",
        "1",
        "--expect",
        "true",
    ]);
    assert_eq!(on.status.code(), Some(0));
    assert_eq!(stdout_json(&on)["result"], Value::Bool(true));
    let off = jetforge(&[
        "membership",
        "--scheme",
        s,
        "--jet",
        "1; 1 + t1",
        "-r",
        "1",
        "--expect",
        "true",
    ]);
    assert_eq!(off.status.code(), Some(1));

    let missing = jetforge(&[
        "jetspace",
        "--scheme",
        "/nonexistent.json",
        "-d",
        "1",
        "-r",
        "1",
    ]);
    assert_eq!(missing.status.code(), Some(2));
    let garbled = write(
        dir.path(),
        "bad.json",
        "{\"variables\": [\"x\"], \"oops\": 1}",
    );
    let bad = jetforge(&[
        "jetspace",
        "--scheme",
        garbled.to_str().unwrap(),
        "-d",
        "1",
        "-r",
        "1",
    ]);
    assert_eq!(bad.status.code(), Some(2));

    let conn = legendre_file(dir.path());
    let pole = jetforge(&[
        "beta",
        "--connection",
        conn.to_str().unwrap(),
        "--jet",
        "1 + t1",
        "-r",
        "2",
    ]);
    assert_eq!(pole.status.code(), Some(3));
    assert!(!pole.stderr.is_empty());
}

#[test]
fn nondeg_and_fv_predicates() {
    let dir = tempfile::tempdir().unwrap();
    let yes = jetforge(&["nondeg", "--jet", "t1; t1^2", "-r", "2"]);
    assert_eq!(stdout_json(&yes)["result"], Value::Bool(true));
    let no = jetforge(&["nondeg", "--jet", "t1^2; 1", "-r", "2", "--expect", "true"]);
    assert_eq!(no.status.code(), Some(1));
    let conn = legendre_file(dir.path());
    let fv = jetforge(&[
        "fv",
        "--connection",
        conn.to_str().unwrap(),
        "--point",
        "half",
        "--expect",
        "true",
    ]);
    assert_eq!(
        fv.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&fv.stderr)
    );
}

#[test]
fn example_exports_its_chart() {
    let out = jetforge(&["example", "weight-two"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = chart_to_json(&example_by_name("weight-two").unwrap().chart);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim_end(),
        expected.trim_end()
    );
    let list = jetforge(&["example", "--list"]);
    assert!(String::from_utf8(list.stdout).unwrap().contains("legendre"));
    assert_eq!(jetforge(&["example", "nope"]).status.code(), Some(2));
}
