//! End-to-end tests of the command-line surface: outputs, exit codes and
//! byte-for-byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn workspace_file(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hochsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn ap_table_of_z2() {
    let out = run(&[
        "hochschild",
        "--group",
        "cyclic:2",
        "--ring",
        "Z",
        "--variant",
        "ap",
        "--max-degree",
        "4",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[2], "0       Z");
    assert_eq!(lines[3], "1       0");
    assert_eq!(lines[4], "2       Z/2");
    assert_eq!(lines[5], "3       0");
}

#[test]
fn amalgam_report_passes() {
    let input = workspace_file("testdata/z2_chain.json");
    let out = run(&[
        "amalgam",
        "--input",
        input.to_str().unwrap(),
        "--ring",
        "Z",
        "--max-degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn modulus_below_two_is_an_input_error() {
    let out = run(&["hochschild", "--group", "cyclic:2", "--ring", "Z/1", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("modulus"));
}

#[test]
fn malformed_json_is_an_input_error_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"cyclic\": }").unwrap();
    let out = run(&["hochschild", "--input", path.to_str().unwrap(), "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn degree_guard_is_an_input_error() {
    let out = run(&["hochschild", "--group", "cyclic:2", "--max-degree", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cap"), "{err}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "check",
        "--group",
        "cyclic:2",
        "--ring",
        "Z",
        "--trials",
        "20",
        "--seed",
        "42",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_format_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = run(&[
        "hochschild",
        "--group",
        "cyclic:2",
        "--variant",
        "ap",
        "--max-degree",
        "4",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "degree,free_rank,torsion");
    assert_eq!(lines[1], "0,1,");
    assert_eq!(lines[3], "2,0,2");
}

#[test]
fn simplicial_models_run() {
    for model in ["bar", "cyclic", "cyclic-unit"] {
        let out = run(&[
            "simplicial",
            "--model",
            model,
            "--group",
            "cyclic:2",
            "--max-degree",
            "3",
        ]);
        assert!(out.status.success(), "{model}");
    }
    let input = workspace_file("testdata/chain3.json");
    let out = run(&[
        "simplicial",
        "--model",
        "nerve",
        "--input",
        input.to_str().unwrap(),
        "--max-degree",
        "3",
    ]);
    assert!(out.status.success());
}

#[test]
fn split_passes_for_z2() {
    let out = run(&["split", "--group", "cyclic:2", "--ring", "Z", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn table_group_input_runs() {
    let input = workspace_file("testdata/klein_four.json");
    let out = run(&[
        "hochschild",
        "--input",
        input.to_str().unwrap(),
        "--variant",
        "ap",
        "--max-degree",
        "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
