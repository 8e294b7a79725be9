use std::process::Command;

use galois_cli::run;
use serde_json::Value;

fn galois(args: &[&str]) -> galois_cli::Outcome {
    run(std::iter::once("galois").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (String, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = galois(&full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = serde_json::from_str(&out.stdout).expect("valid json");
    (out.stdout, v)
}

#[test]
fn group_text() {
    let out = galois(&["group", "x^3 - 3*x + 1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("order: 3"));
    assert!(out.stdout.contains("label: 3T1 (A3)"));
    assert!(out.stdout.contains("discriminant square: yes"));
    let out = galois(&["group", "x^4 - 2"]);
    assert!(out.stdout.contains("label: 4T3 (D4)"));
    assert!(out.stdout.contains("  x1^4 - 2\n"));
}

#[test]
fn group_json_round_trips() {
    let (text, v) = json(&["group", "x^4 + 1"]);
    assert_eq!(v["order"], 4);
    assert_eq!(v["label"], "4T2 (V4)");
    assert_eq!(v["transitive"], true);
    assert_eq!(v["triangular"].as_array().unwrap().len(), 4);
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, text);
    let chain: Vec<u64> = v["chain"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["dimension"].as_u64().unwrap())
        .collect();
    assert_eq!(chain, vec![24, 8, 4]);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "group", "x^4 - 2"][..],
        &["group", "x^3 - 2"],
        &["--json", "check", "x^5 - x - 1"],
        &["--json", "matrices", "--degree", "4"],
    ] {
        let a = galois(args);
        let b = galois(args);
        assert_eq!(a, b);
    }
}

#[test]
fn cauchy_modules() {
    let (_, v) = json(&["cauchy", "x^3 - 2*x + 5"]);
    let mods: Vec<&str> = v["modules"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_str().unwrap())
        .collect();
    assert_eq!(mods.len(), 3);
    assert_eq!(mods[0], "x1^3 - 2*x1 + 5");
    assert_eq!(mods[2], "x3 + x2 + x1");
    let out = galois(&["cauchy", "x^2 + 1"]);
    assert_eq!(out.stdout, "C1 = x1^2 + 1\nC2 = x2 + x1\n");
}

#[test]
fn resolvents() {
    let (_, v) = json(&["resolvent", "x^4 + 1", "--invariant", "x1*x2 + x3*x4"]);
    assert_eq!(v["resolvent"], "x^3 - 4*x");
    assert_eq!(v["cofactor_exponent"], 8);
    assert_eq!(v["separable"], true);
    let out = galois(&[
        "resolvent",
        "x^4 + 1",
        "--invariant",
        "x1*x2 + x3*x4",
        "--group",
        "D4",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = galois(&[
        "resolvent",
        "x^4 + 1",
        "--invariant",
        "x1*x2 + x3*x4",
        "--group",
        "(1 3 2 4);(1 2)",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = galois(&[
        "resolvent",
        "x^4 + 1",
        "--invariant",
        "x1*x2 + x3*x4",
        "--group",
        "(1 2 3 4);(1 3)",
    ]);
    assert_eq!(out.code, 1);
    let out = galois(&[
        "resolvent",
        "x^4 + 1",
        "--invariant",
        "x1*x2 + x3*x4",
        "--group",
        "A4",
    ]);
    assert_eq!(out.code, 1);
    let out = galois(&[
        "resolvent",
        "x^3 - 2",
        "--invariant",
        "(x1 - x2)*(x1 - x3)*(x2 - x3)",
    ]);
    assert!(out.stdout.contains("resolvent: x^2 + 108"));
}

#[test]
fn matrices() {
    let (_, v) = json(&["matrices", "--degree", "4"]);
    assert_eq!(v["rows_distinct"], true);
    assert_eq!(v["orders"].as_array().unwrap().len(), 11);
    let out = galois(&["matrices", "--degree", "3"]);
    assert!(out.stdout.contains("rows distinct: yes"));
    assert_eq!(galois(&["matrices", "--degree", "9"]).code, 2);
}

#[test]
fn check_report() {
    let (_, v) = json(&["--primes", "5,7,11", "check", "x^3 - 2"]);
    assert_eq!(v["discriminant"], "-108");
    assert_eq!(v["discriminant_square"], false);
    assert_eq!(v["cycle_types"], serde_json::json!([[1, 2], [3]]));
    let (_, v) = json(&["check", "x^4 - 5*x^2 + 6"]);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(galois(&["group", "x^^2"]).code, 2);
    assert_eq!(galois(&["group"]).code, 2);
    assert_eq!(galois(&["frobnicate"]).code, 2);
    assert_eq!(galois(&["--max-degree", "3", "group", "x^4 + 1"]).code, 2);
    assert_eq!(galois(&["group", "x^2 - 2*x + 1"]).code, 1);
    assert_eq!(galois(&["group", "7"]).code, 2);
    assert_eq!(galois(&["--help"]).code, 0);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_galois");
    let ok = Command::new(bin)
        .args(["group", "x^2 - 2"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8(ok.stdout).unwrap().contains("2T1 (S2)"));
    let bad = Command::new(bin).args(["group", "x^"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
    let obstruction = Command::new(bin)
        .args(["group", "(x - 1)^2*(x + 3)"])
        .output()
        .unwrap();
    assert_eq!(obstruction.status.code(), Some(1));
}
