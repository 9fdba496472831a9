//! End-to-end checks of the installed binary: frozen example outputs, exit
//! code conventions, environment handling, and byte-level determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use kinj::anmod::{stalk, AnAlgebra};
use kinj::classify::{realize_label, CanonLabel};
use kinj::exactlin::Field;
use serde_json::{json, Value};
use tempfile::tempdir;

fn kinj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kinj"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_two_term(dir: &Path) -> String {
    let algebra = Arc::new(AnAlgebra::new(1).expect("valid"));
    let label = CanonLabel::new(Some(0), Some(1), 1, 1).expect("valid");
    let x = realize_label(algebra, Field::Rational, &label, (0, 1)).expect("realizable");
    let path = dir.join("two_term.json");
    fs::write(&path, x.to_json().to_string()).expect("writable");
    path.to_str().expect("utf8 path").to_owned()
}

fn write_stalk(dir: &Path) -> String {
    let algebra = Arc::new(AnAlgebra::new(1).expect("valid"));
    let x = stalk(algebra, Field::Rational, 1, 0);
    let path = dir.join("stalk.json");
    fs::write(&path, x.to_json().to_string()).expect("writable");
    path.to_str().expect("utf8 path").to_owned()
}

#[test]
fn classify_two_term_reports_the_expected_label() {
    let dir = tempdir().expect("temp dir");
    let path = write_two_term(dir.path());
    let v = stdout_json(&kinj(&["classify", &path]));
    assert_eq!(
        v,
        json!({"labels": [{"anchor": 1, "end": 1, "mult": 1, "start": 0}]})
    );
}

#[test]
fn hom_of_the_stalk_with_itself_stabilizes_at_two() {
    let dir = tempdir().expect("temp dir");
    let path = write_stalk(dir.path());
    let v = stdout_json(&kinj(&["hom", &path, &path]));
    assert_eq!(v, json!({"dim": 2, "stableAt": 4}));
}

#[test]
fn selftest_with_seed_one_is_clean() {
    let v = stdout_json(&kinj(&["selftest", "--seed", "1", "--cases", "100"]));
    assert_eq!(v["seed"], json!(1));
    assert_eq!(v["cases"], json!(100));
    assert_eq!(v["failureCount"], json!(0));
    assert_eq!(v["failures"], json!([]));
    assert_eq!(v["ok"], json!(true));
}

#[test]
fn equal_invocations_produce_identical_bytes() {
    let dir = tempdir().expect("temp dir");
    let path = write_two_term(dir.path());
    let a = kinj(&["classify", &path]);
    let b = kinj(&["classify", &path]);
    assert_eq!(a.stdout, b.stdout);
    let a = kinj(&["selftest", "--seed", "7", "--cases", "25"]);
    let b = kinj(&["selftest", "--seed", "7", "--cases", "25"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn exit_codes_separate_success_domain_and_usage() {
    assert_eq!(kinj(&["--help"]).status.code(), Some(0));
    assert_eq!(kinj(&[]).status.code(), Some(2), "missing subcommand is a usage error");
    assert_eq!(kinj(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        kinj(&["--field", "fp:9", "selftest", "--cases", "1"]).status.code(),
        Some(2),
        "9 is not prime"
    );
    let missing = kinj(&["classify", "/no/such/file.json"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(!missing.stderr.is_empty());
}

#[test]
fn malformed_input_is_a_domain_error_naming_the_position() {
    let dir = tempdir().expect("temp dir");
    let path = dir.path().join("broken.json");
    fs::write(&path, "{\n  \"n\": }\n").expect("writable");
    let out = kinj(&["classify", path.to_str().expect("utf8")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr was: {err}");
}

#[test]
fn max_window_env_caps_the_stabilization_search() {
    let dir = tempdir().expect("temp dir");
    let path = write_stalk(dir.path());
    let out = Command::new(env!("CARGO_BIN_EXE_kinj"))
        .env("KINJ_MAX_WINDOW", "2")
        .args(["hom", &path, &path])
        .output()
        .expect("the binary runs");
    let v = stdout_json(&out);
    assert_eq!(
        v,
        json!({"dimAtCutoff": 2, "unstable": true, "windowWidth": 2})
    );
    let bad = Command::new(env!("CARGO_BIN_EXE_kinj"))
        .env("KINJ_MAX_WINDOW", "zero")
        .args(["hom", &path, &path])
        .output()
        .expect("the binary runs");
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn realized_output_feeds_straight_back_into_classify() {
    let dir = tempdir().expect("temp dir");
    let out = kinj(&["realize", "-1:1:2", "--n", "3", "--window", "-1:1"]);
    assert!(out.status.success());
    let path = dir.path().join("realized.json");
    fs::write(&path, &out.stdout).expect("writable");
    let v = stdout_json(&kinj(&["classify", path.to_str().expect("utf8")]));
    assert_eq!(
        v,
        json!({"labels": [{"anchor": 2, "end": 1, "mult": 1, "start": -1}]})
    );
}

#[test]
fn a_closed_pipe_ends_the_run_quietly() {
    use std::io::Read;
    use std::process::Stdio;
    // A window this wide renders to well over the 64 KiB pipe buffer, so the
    // child is still writing when the read end goes away.
    let mut child = Command::new(env!("CARGO_BIN_EXE_kinj"))
        .args(["realize", "0:0:1", "--n", "4", "--window", "-900:900"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("the binary runs");
    let mut head = [0u8; 64];
    child
        .stdout
        .take()
        .expect("stdout piped")
        .read_exact(&mut head)
        .expect("some output arrives");
    // dropping the handle above closed the pipe; the child should exit 0
    let status = child.wait().expect("child exits");
    let mut err = String::new();
    child
        .stderr
        .take()
        .expect("stderr piped")
        .read_to_string(&mut err)
        .expect("stderr is readable");
    assert_eq!(status.code(), Some(0), "stderr was: {err}");
    assert!(err.is_empty(), "stderr was: {err}");
}

#[test]
fn pretty_output_parses_to_the_same_document() {
    let dir = tempdir().expect("temp dir");
    let path = write_two_term(dir.path());
    let plain = kinj(&["classify", &path]);
    let pretty = kinj(&["--pretty", "classify", &path]);
    assert_ne!(plain.stdout, pretty.stdout);
    let a: Value = serde_json::from_slice(&plain.stdout).expect("json");
    let b: Value = serde_json::from_slice(&pretty.stdout).expect("json");
    assert_eq!(a, b);
}
