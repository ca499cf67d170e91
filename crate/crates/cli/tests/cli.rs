use std::process::{Command, Output};

use serde_json::Value;

fn arborlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arborlink")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn single_twist_invariants() {
    let out = arborlink(&["invariants", "--json", "(3)"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["f"], 0);
    assert_eq!(r["m"], 2);
    assert_eq!(r["omega_bound"], 2);
    assert_eq!(r["status"], "agree");
}

#[test]
fn star_invariants() {
    let out = arborlink(&["invariants", "--json", "(0 (2) (2) (2))"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["f"], 1);
    assert_eq!(r["m"], 3);
    assert_eq!(r["mu_lower_bound"], 3);
    assert_eq!(r["equality"], true);
    assert_eq!(r["bridge_certificate"]["verified"], true);
}

#[test]
fn human_output_mentions_values() {
    let out = arborlink(&["invariants", "(0 (2) (2) (2))"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("f: 1"));
    assert!(text.contains("mu >= 3"));
}

#[test]
fn parse_errors_are_usage_errors() {
    let out = arborlink(&["invariants", "(2"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse"));
    assert_eq!(arborlink(&["invariants"]).status.code(), Some(64));
    assert_eq!(arborlink(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(arborlink(&["--help"]).status.code(), Some(0));
    assert_eq!(arborlink(&["--version"]).status.code(), Some(0));
}

#[test]
fn tree_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tree.txt");
    std::fs::write(&path, "(0 (2) (2) (2))\n").unwrap();
    let out = arborlink(&["invariants", "--json", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["f"], 1);

    let missing = dir.path().join("missing.txt");
    let out = arborlink(&["invariants", "--file", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(74));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.txt"));
}

#[test]
fn corpus_is_deterministic() {
    let args = ["corpus", "--json", "--count", "6", "--seed", "11"];
    let a = arborlink(&args);
    let b = arborlink(&args);
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<Value> = String::from_utf8(a.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 7);
    let summary = &lines[6]["summary"];
    assert_eq!(summary["records"], 6);
    assert_eq!(summary["violations"], 0);
    let code = a.status.code().unwrap();
    assert!(code == 0 || code == 2, "exit {code}");
}

#[test]
fn empty_corpus() {
    let out = arborlink(&["corpus", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("equalities: 0/0"));
}

#[test]
fn many_twigs_corpus_reaches_equality() {
    let out = arborlink(&["corpus", "--many-twigs", "--count", "3", "--max-vertices", "10"]);
    assert_ne!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("equalities: 3/3"));
}

#[test]
fn corpus_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.jsonl");
    let out = arborlink(&["corpus", "--count", "2", "--out", path.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(1));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 3);
}

#[test]
fn diagram_json_round_trips() {
    let out = arborlink(&["diagram", "(2 (3) (-2))"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let d = arborlink::Diagram::import(text.trim()).expect("importable");
    assert_eq!(d.export(), text.trim());
}

#[test]
fn diagram_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.svg");
    let out = arborlink(&["diagram", "--format", "svg", "--out", path.to_str().unwrap(), "(3)"]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="under""#).count(), 3);
}

#[test]
fn unknown_diagram_format() {
    assert_eq!(arborlink(&["diagram", "--format", "png", "(3)"]).status.code(), Some(64));
}

#[test]
fn wirtinger_and_coxeter_subcommands() {
    let out = arborlink(&["wirtinger", "--json", "(0 (2) (2) (2))"]);
    assert_eq!(out.status.code(), Some(0));
    let w = json(&out);
    assert_eq!(w["certificate"]["bound"], 3);
    assert_eq!(w["omega_exact"], 3);

    let out = arborlink(&["coxeter", "--json", "(0 (2) (2) (2))"]);
    assert_eq!(out.status.code(), Some(0));
    let c = json(&out);
    assert_eq!(c["generators"], 3);
    assert_eq!(c["mu_lower_bound"], 3);

    // a twig of weight 1 breaks the hypothesis
    assert_eq!(arborlink(&["coxeter", "(0 (1) (2) (2))"]).status.code(), Some(2));
}

#[test]
fn negative_weights_are_not_flags() {
    let out = arborlink(&["invariants", "--json", "-3"]);
    assert_eq!(out.status.code(), Some(64));
    let out = arborlink(&["corpus", "--count", "1", "--weight-min", "-3", "--weight-max", "-2"]);
    assert_ne!(out.status.code(), Some(64));
}
