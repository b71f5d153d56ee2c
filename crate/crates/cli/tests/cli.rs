//! End-to-end checks of the toucher-lab binary: exit codes, report
//! formats, and output determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toucher-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_reports_json_value() {
    let out = run(&["solve", "--family", "cycle", "--n", "4"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["value"], 1);
    assert_eq!(doc["ceiling"], 22);
}

#[test]
fn solve_file_input() {
    let dir = std::env::temp_dir().join("toucher_cli_test_solve");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c3.txt");
    std::fs::write(&path, "3 3\n0 1\n1 2\n2 0\n").unwrap();
    let out = run(&["solve", "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["value"], 0);
}

#[test]
fn solve_ceiling_exit_code() {
    let out = run(&["solve", "--family", "cycle", "--n", "40"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_invalid_params_exit_code() {
    let out = run(&["gen", "--family", "cycle", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_gadget_roundtrips() {
    let out = run(&["gen", "--family", "gadget24"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("24 36\n"));
    let g = toucher_core::parse_graph(&text).unwrap();
    assert!(g.is_regular(3));
}

#[test]
fn play_emits_move_log_lines() {
    let out = run(&[
        "play",
        "--family",
        "k4_components",
        "--c",
        "1",
        "--toucher",
        "k4_components",
        "--isolator",
        "max_danger",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.trim_end().ends_with("untouched: 0"), "{}", text);
    let first = text.lines().next().unwrap();
    let fields: Vec<&str> = first.split(' ').collect();
    assert_eq!(fields.len(), 5, "ply player edge u v: {}", first);
    assert_eq!(fields[0], "0");
    assert!(fields[1] == "T" || fields[1] == "I");
}

#[test]
fn unknown_strategy_exit_code() {
    let out = run(&[
        "play",
        "--family",
        "cycle",
        "--n",
        "5",
        "--toucher",
        "definitely_not_a_strategy",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn best_response_certifies_a_guarantee() {
    let out = run(&[
        "best-response",
        "--family",
        "path",
        "--n",
        "7",
        "--fixed",
        "isolator",
        "--strategy",
        "path_segment",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(doc["value"].as_u64().unwrap() >= 1);
}

#[test]
fn bounds_reports_entries_and_sandwich() {
    let out = run(&["bounds", "--family", "star", "--n", "7", "--exact"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["exact_value"], 3);
    assert_eq!(doc["best_upper"], 3);
    assert!(doc["sandwich"].as_array().unwrap().iter().all(|v| v["holds"] == true));
}

#[test]
fn experiment_output_is_byte_identical() {
    let args = [
        "experiment",
        "--family",
        "path",
        "--n-min",
        "2",
        "--n-max",
        "9",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    assert!(text.starts_with("# toucher-lab v1\n"));
    assert_eq!(text.lines().count(), 2 + 8, "header + schema + one row per n");
}

#[test]
fn human_isolator_is_reprompted_until_legal() {
    use std::io::Write as _;
    use std::process::Stdio;
    let mut child = bin()
        .args(["play", "--family", "cycle", "--n", "3", "--human", "isolator"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // C3: Toucher opens, the human plays once; feed two illegal inputs first
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"99\nnonsense\n1\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success(), "{:?}", out);
    let text = stdout(&out);
    assert!(text.contains("not a free edge id"), "{}", text);
    assert!(text.contains("untouched: 0"), "{}", text);
}

#[test]
fn verify_named_suite_passes() {
    let out = run(&["verify", "--suite", "unreproducible"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS unreproducible/gadget24-full-game"));
}

#[test]
fn verify_unknown_suite_fails() {
    let out = run(&["verify", "--suite", "nonesuch"]);
    assert_eq!(out.status.code(), Some(1));
}
