use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tsslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsslab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = tsslab(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn code(args: &[&str]) -> i32 {
    tsslab(args).status.code().expect("exit code")
}

#[test]
fn max_of_dihedral_group() {
    let doc = json(&["tss", "max", "--group", "dihedral:7"]);
    assert_eq!(doc["s_of_g"], 2);
    assert_eq!(doc["sets"].as_array().unwrap().len(), 3);
}

#[test]
fn list_and_check_agree() {
    let doc = json(&["tss", "list", "--group", "dihedral:4", "--size", "2"]);
    assert_eq!(doc["count"], 3);
    assert_eq!(
        code(&[
            "tss",
            "check",
            "--group",
            "dihedral:4",
            "-e",
            "r",
            "-e",
            "r^3"
        ]),
        0
    );
    assert_eq!(
        code(&[
            "tss",
            "check",
            "--group",
            "dihedral:4",
            "-e",
            "r",
            "-e",
            "s"
        ]),
        1
    );
}

#[test]
fn odd_order_suite_passes() {
    let doc = json(&["verify", "odd-order", "--max-order", "200"]);
    let instances = doc["instances"].as_array().unwrap();
    assert!(instances.len() > 20);
    assert!(instances.iter().all(|i| i["verdict"] == "pass"));
}

#[test]
fn failing_instances_carry_rerun_commands() {
    let out = tsslab(&[
        "--format",
        "json",
        "verify",
        "non-injective",
        "--grid",
        "pairs=sym:3>sym:4",
    ]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let inst = &doc["instances"][0];
    assert_eq!(inst["verdict"], "not_applicable");
    assert!(inst["command"]
        .as_str()
        .unwrap()
        .starts_with("tsslab verify non-injective --grid"));
}

#[test]
fn table_is_deterministic() {
    let first = tsslab(&["table"]);
    let second = tsslab(&["--jobs", "1", "table"]);
    assert_eq!(code(&["table"]), 0);
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.contains("dihedral:7"));
}

#[test]
fn csv_output_has_header() {
    let out = tsslab(&["--format", "csv", "tss", "max", "--group", "sym:3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("size,elements,labels,witnesses"));
}

#[test]
fn out_dir_collects_evidence() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(
        code(&["--out", out, "verify", "dihedral", "--grid", "n=3|4"]),
        0
    );
    let suite: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("dihedral.json")).unwrap())
            .unwrap();
    let artifacts = suite["artifacts"].as_array().unwrap();
    assert_eq!(artifacts.len(), 2);
    assert!(artifacts
        .iter()
        .all(|a| Path::new(a.as_str().unwrap()).exists()));
}

#[test]
fn word_commands() {
    let doc = json(&["word", "f2", "multiply", "ab", "BA"]);
    assert_eq!(doc["text"], "e");
    let doc = json(&["word", "bs", "--n", "2", "commutes", "a^1", "a^3/n^2"]);
    assert_eq!(doc["commutes"], true);
    let doc = json(&[
        "word",
        "fp",
        "--left",
        "cyclic:3",
        "--right",
        "cyclic:3",
        "commutes",
        "[G:1][H:1]",
        "[G:1][H:1][G:1][H:1]",
    ]);
    assert_eq!(doc["commutes"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["group", "info", "--group", "dihedral:5"]), 0);
    assert_eq!(code(&["group", "info", "--group", "nonsense:5"]), 2);
    assert_eq!(code(&["tss", "max"]), 2);
    assert_eq!(code(&["verify", "no-such-theorem"]), 2);
    assert_eq!(code(&["verify", "dihedral", "--grid", "m=3"]), 2);
    assert_eq!(
        code(&[
            "--budget",
            "10",
            "hom",
            "enumerate",
            "--presentation",
            "braid:4",
            "--target",
            "sym:4"
        ]),
        3
    );
    assert_eq!(
        code(&[
            "verify",
            "free-product",
            "--grid",
            "pairs=cyclic:2*cyclic:3 max-len=4"
        ]),
        1
    );
}
