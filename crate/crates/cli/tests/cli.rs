use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epist2int"))
        .args(args)
        .env_remove("EPIST2INT_MAX_CHAIN")
        .env_remove("EPIST2INT_NODE_CAP")
        .env_remove("EPIST2INT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim()
        .to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn ff_translation_of_boxed_atom() {
    let o = run(&[
        "translate",
        "--mode",
        "ff",
        "--gamma",
        "E",
        "--witness",
        "E",
        "[]p",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(((p -> E) -> E) -> E) -> E");
    let o = run(&[
        "translate",
        "--mode",
        "ff",
        "--gamma",
        "E",
        "--witness",
        "E",
        "--simplify",
        "[]p",
    ]);
    assert_eq!(stdout(&o), "(p -> E) -> E");

    let o = run(&[
        "--output",
        "json",
        "translate",
        "--mode",
        "ff",
        "--gamma",
        "E,C",
        "--witness",
        "E",
        "--simplify",
        "[]p",
    ]);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["simplified"], "(p -> E) -> E");
    assert_eq!(v["result"], v["simplified"]);
    assert_ne!(v["raw"], v["simplified"]);
}

#[test]
fn godel_translation() {
    let o = run(&["translate", "--mode", "godel", "p -> q"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[]([]p -> []q)");
}

#[test]
fn witness_outside_context_is_an_error() {
    let o = run(&[
        "--output",
        "json",
        "translate",
        "--mode",
        "ff",
        "--gamma",
        "C",
        "--witness",
        "E",
        "p",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"].as_str().unwrap().contains("E"));

    let o = run(&["translate", "--mode", "ff", "p"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn prove_exit_codes() {
    let o = run(&["prove", "--logic", "ip", "p -> q, p |- q"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["prove", "--logic", "ip", "|- p \\/ ~p"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["prove", "--logic", "ip", "|- []p -> p"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["prove", "--logic", "ep", "|- []p -> p"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn prove_json_carries_trace_or_countermodel() {
    let o = run(&[
        "--output",
        "json",
        "prove",
        "--logic",
        "ip",
        "--trace",
        "|- p -> (p -> q) -> q",
    ]);
    let v = json(&o);
    assert_eq!(v["verdict"], "Provable");
    assert_eq!(v["trace"]["rule"], "ImpR");

    let o = run(&["--output", "json", "prove", "--logic", "ep", "|- p -> []p"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdict"], "NotProvable");
    assert_eq!(v["countermodel"]["worlds"].as_array().unwrap().len(), 2);
}

#[test]
fn node_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_epist2int"))
        .args([
            "--output",
            "json",
            "prove",
            "--logic",
            "ip",
            "|- p -> (p -> q) -> q",
        ])
        .env("EPIST2INT_NODE_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"].is_string());

    let o = Command::new(env!("CARGO_BIN_EXE_epist2int"))
        .args(["prove", "--logic", "ip", "|- p -> p"])
        .env("EPIST2INT_NODE_CAP", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_in_three_chain() {
    let target = "((((E -> C) -> C) -> (B -> C) -> C) -> E) -> E";
    let o = run(&["eval", "--chain", "3", "--assign", "B=0,C=0,E=1", target]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 (not top)");

    let o = run(&[
        "--output", "json", "eval", "--chain", "3", "--assign", "B=0", "--assign", "C=0",
        "--assign", "E=1", target,
    ]);
    let v = json(&o);
    assert_eq!(v["value"], 1);
    assert_eq!(v["is_top"], false);

    let o = run(&["eval", "--chain", "3", "--assign", "p=5", "p"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", "--chain", "3", "p"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn refute_needs_lattices_for_linearity() {
    let f = "(p -> q) \\/ (q -> p)";
    assert_eq!(run(&["refute", f]).status.code(), Some(1));
    let o = run(&["--output", "json", "refute", "--lattices", f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["countermodel"]["kind"], "table");
}

#[test]
fn paper_checks_emit_json_lines() {
    let o = run(&["--output", "json", "paper", "thm2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["name"], "thm2");
    assert_eq!(v["status"], "pass");

    let o = run(&["--output", "json", "paper", "nonesuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"].is_string());
}

#[test]
fn paper_soundness_with_seed() {
    let o = run(&["--output", "json", "paper", "soundness", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["details"]["samples"], 500);
}

#[test]
fn json_mode_stays_json_on_usage_errors() {
    let o = run(&["--output", "json", "frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"].is_string());

    let o = run(&["--output", "json", "parse", "p /\\"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"].is_string());
}

#[test]
fn parse_prints_canonical_form() {
    let o = run(&["parse", "(p /\\ q) -> r"]);
    assert_eq!(stdout(&o), "p /\\ q -> r");
}

#[test]
fn list_shows_registries() {
    let v = json(&run(&["--output", "json", "list"]));
    let names: Vec<&str> = v["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for n in ["ip", "ep", "godel", "ff", "soundness", "chains"] {
        assert!(names.contains(&n), "{names:?}");
    }
}
