//! Runs the `dendro` binary end to end: output shape, exit codes,
//! determinism and round-tripping of printed trees and expressions.

use std::process::{Command, Output};

use dendroidal::cli::Expr;
use dendroidal::trees::Tree;
use serde_json::Value;

fn dendro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dendro")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = dendro(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn census_of_a_corolla() {
    let (code, v) = json(&["census", "rep(r(a,b))"]);
    assert_eq!(code, 0);
    let shapes = v["census"]["shapes"].as_array().unwrap();
    let counts: Vec<(&str, u64)> =
        shapes.iter().map(|s| (s["shape"].as_str().unwrap(), s["count"].as_u64().unwrap())).collect();
    assert_eq!(counts, vec![("eta", 3), ("C_2", 2)]);
    assert_eq!(v["census"]["total"], 5);
}

#[test]
fn check_exit_codes() {
    let (code, v) = json(&["check", "nerve(comm)", "--property", "dendroidal-kan", "--bound", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert!(v["failure"].is_null());

    let (code, v) = json(&["check", "i!(simplex(0))", "--property", "left-fibration", "--bound", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["failure"]["clause"], "corolla");
    assert_eq!(v["failure"]["top"], serde_json::json!([]));

    let (code, v) = json(&["check", "nerve(comm)", "--property", "normal-mono", "--bound", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["failure"]["tree"], "e0(e1,e2)");
}

#[test]
fn errors_exit_two() {
    for args in [
        vec!["census", "rep(r(a,"],
        vec!["hom", "a"],
        vec!["horn", "r(a,b)", "--inner", "a"],
        vec!["trees", "list", "--max-vertices", "99"],
        vec!["frobnicate"],
    ] {
        let out = dendro(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} prints a diagnostic");
    }
}

#[test]
fn straighten_example() {
    let (code, v) = json(&["straighten", "r(b(a))", "--color", "r"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"][0]["axes"], serde_json::json!(["a", "b"]));
    assert_eq!(v["values"][0]["dimension"], 2);
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 4] = [
        &["trees", "list", "--max-vertices", "3"],
        &["tensor", "rep(r(a,b))", "--simplex", "1"],
        &["check", "coprod(nerve(comm),nerve(comm))", "--property", "dendroidal-kan", "--bound", "3"],
        &["anodynes", "--bound", "2"],
    ];
    for args in cases {
        let a = dendro(args);
        let b = dendro(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn printed_trees_and_expressions_reparse() {
    let (_, v) = json(&["trees", "list", "--max-vertices", "3", "--max-arity", "2"]);
    for t in v["trees"].as_array().unwrap() {
        let text = t["tree"].as_str().unwrap();
        assert_eq!(Tree::parse(text).unwrap().to_string(), text);
    }
    let (_, v) = json(&["faces", "r(b(a,c),d)"]);
    for f in v["faces"].as_array().unwrap() {
        let text = f["face"].as_str().unwrap();
        assert_eq!(Tree::parse(text).unwrap().to_string(), text);
    }
    let (_, v) = json(&["census", "coprod(ihorn(r(b(a),c),b),tensor(rep(r(a)),1))"]);
    let text = v["expr"].as_str().unwrap();
    assert_eq!(text.parse::<Expr>().unwrap().to_string(), text);
}

#[test]
fn pretty_output_is_key_value_text() {
    let out = dendro(&["--pretty", "faces", "r(a)"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tree: r(a)"), "{text}");
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

#[test]
fn mapspace_over_eta() {
    let (code, v) = json(&["mapspace", "i!(simplex(1))", "i!(simplex(1))", "--over", "eta", "--degree", "2"]);
    assert_eq!(code, 0);
    // monotone maps [1] x [k] -> [1]
    assert_eq!(v["simplices"], serde_json::json!([3, 6, 10]));
}

#[test]
fn shuffle_trees_reparse() {
    let (_, v) = json(&["tensor", "rep(r(a,b))", "--simplex", "1"]);
    for s in v["shuffles"].as_array().unwrap() {
        let text = s.as_str().unwrap();
        assert_eq!(Tree::parse(text).unwrap().to_string(), text);
    }
}
