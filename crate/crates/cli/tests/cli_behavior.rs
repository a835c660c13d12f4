//! Exit codes and argument handling.

use std::process::{Command, Output};

fn kbraid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kbraid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn success_exits_zero() {
    assert_eq!(code(&kbraid(&["verify", "A2", "--suite", "inverse"])), 0);
    assert_eq!(code(&kbraid(&["kl", "A1", "", "1"])), 0);
}

#[test]
fn parse_errors_exit_two() {
    // malformed Cartan specs
    assert_eq!(code(&kbraid(&["roots", "Z9"])), 2);
    assert_eq!(code(&kbraid(&["roots", "[[2,-2],[-2,2]]"])), 2);
    // malformed words and expressions
    assert_eq!(code(&kbraid(&["kl", "A2", "x", "1"])), 2);
    assert_eq!(code(&kbraid(&["mult", "A1", "T(1"])), 2);
    assert_eq!(code(&kbraid(&["mult", "A1", "Q(1)"])), 2);
    // missing/conflicting spec
    assert_eq!(code(&kbraid(&["kl", "--all"])), 2);
    assert_eq!(code(&kbraid(&["kl", "A2", "--all", "-t", "B2"])), 2);
    // clap usage errors
    assert_eq!(code(&kbraid(&["no-such-command"])), 2);
    assert_eq!(code(&kbraid(&["verify", "A2", "--suite", "bogus"])), 2);
}

#[test]
fn runtime_failures_exit_one() {
    assert_eq!(code(&kbraid(&["dl", "A2", "1", "/no/such/file.json"])), 1);
}

#[test]
fn type_flag_and_positional_agree() {
    let a = kbraid(&["verify", "A2", "--suite", "inverse", "--json"]);
    let b = kbraid(&["verify", "-t", "A2", "--suite", "inverse", "--json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(code(&b), 0);
    // identical spec in both places is accepted
    assert_eq!(code(&kbraid(&["verify", "A2", "-t", "A2", "--suite", "inverse"])), 0);
}

#[test]
fn custom_matrix_spec_accepted() {
    let out = kbraid(&["roots", "[[2,-1],[-1,2]]", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["roots"].as_array().unwrap().len(), 6);
}

#[test]
fn mismatched_dl_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(
        &f,
        r#"{"cartan":"B2","terms":[{"exp":[1,0],"poly":{"terms":[[0,1]]}}]}"#,
    )
    .unwrap();
    let out = kbraid(&["dl", "A2", "1", f.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("different Cartan data"));
}
