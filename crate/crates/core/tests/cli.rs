use std::process::{Command, Output};

use serde_json::Value;

fn grouptk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouptk")).args(args).env_remove("GROUPTK_BUDGET").env_remove("GROUPTK_COSET_LIMIT").output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = grouptk(&full);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

#[test]
fn json_output_is_byte_deterministic() {
    for args in [&["wu", "--n", "2", "--class", "3"][..], &["kernel", "--group", "catalog:S3", "--subgroups", "whole,whole"][..]] {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let first = grouptk(&full).stdout;
        assert!(!first.is_empty());
        assert_eq!(grouptk(&full).stdout, first);
    }
}

#[test]
fn envelope_has_schema_and_verb() {
    let (code, v) = json(&["wu", "--n", "2", "--class", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verb"], "wu");
    assert_eq!(v["result"]["invariants"]["free_rank"], 1);
    assert_eq!(v["result"]["hopf"]["in_denominator"], false);
}

#[test]
fn wu_two_reports_free_rank_one() {
    let out = grouptk(&["wu", "--n", "2", "--class", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("free rank: 1"), "{text}");
    assert!(text.contains("in denominator: no"), "{text}");
}

#[test]
fn input_errors_exit_one() {
    let (code, v) = json(&["pi", "--n", "1", "--group", "gens: a | rels: a^", "--subgroups", "whole"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "syntax");
    assert_eq!(v["error"]["exit_code"], 1);
    assert_eq!(grouptk(&["pi", "--n", "1", "--group", "catalog:NOPE", "--subgroups", "whole"]).status.code(), Some(1));
}

#[test]
fn failed_hypothesis_exits_two() {
    let (code, v) = json(&["pi", "--n", "4", "--group", "catalog:V4", "--subgroups", "N1,N2,N3,whole"]);
    assert_eq!(code, 2, "{v}");
    assert_eq!(v["error"]["kind"], "hypothesis");
}

#[test]
fn budget_override_exits_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_grouptk")).args(["wu", "--n", "2", "--class", "4"]).env("GROUPTK_BUDGET", "5").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget is 5"));
    assert_eq!(grouptk(&["wu", "--n", "2", "--class", "4"]).status.code(), Some(0));
}

#[test]
fn coset_limit_exits_three() {
    let out = grouptk(&["akcheck", "--n", "2", "--limit", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn akcheck_reports_trivial_group() {
    let out = grouptk(&["akcheck", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("trivial group: yes"));
}

#[test]
fn pi_one_of_whole_group_is_trivial() {
    let (code, v) = json(&["pi", "--n", "1", "--group", "catalog:S3", "--subgroups", "whole"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 1);
}

#[test]
fn in_process_run_matches_binary() {
    let outcome = grouptk::cli::run_args(["grouptk", "--json", "wu", "--n", "2", "--class", "3"]);
    assert_eq!(outcome.code, 0);
    assert_eq!(outcome.stdout.as_bytes(), grouptk(&["--json", "wu", "--n", "2", "--class", "3"]).stdout);
}
