//! End-to-end checks of the command-line interface.

use std::process::Command;

use psun_cli::{run, EXIT_COMPUTATION, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("psun").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn call_json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn alexander_text() {
    let (code, out, _) = call(&["alexander", "4_1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "-1*t^-1 + 3 - 1*t^1");
    let (_, out, _) = call(&["alexander", "1 1 1"]);
    assert_eq!(out.trim(), "1*t^-1 - 1 + 1*t^1");
}

#[test]
fn alexander_json_round_trips() {
    let v = call_json(&["alexander", "5_2", "--json"]);
    assert_eq!(v["determinant"], "7");
    let d: psun_core::LaurentPoly = serde_json::from_value(v["alexander"].clone()).unwrap();
    assert_eq!(d.to_string(), v["text"].as_str().unwrap());
}

#[test]
fn invariant_json() {
    let v = call_json(&["invariant", "3_1", "--n", "2", "--json"]);
    assert_eq!(v["value"], "3");
    assert_eq!(v["sign_determined"], false);
    assert_eq!(v["degenerate"], false);
    let v = call_json(&["invariant", "3_1", "--n", "6", "--json"]);
    assert_eq!(v["value"], "0");
    assert_eq!(v["degenerate"], true);
}

#[test]
fn homology_and_repvar() {
    let (_, out, _) = call(&["homology", "4_1", "--n", "3"]);
    assert_eq!(out.trim(), "Z/4 + Z/4");
    let v = call_json(&["repvar", "4_1", "--n", "3", "--json"]);
    assert_eq!(v["t3_points"], 3);
    assert_eq!(v["kernel_count"], "16");
    assert_eq!(v["wirtinger_count"], "16");
    assert_eq!(v["cs_ladder"]["values"][1], "2/3");
    let v = call_json(&["repvar", "3_1", "--n", "6", "--json"]);
    assert!(v["kernel_count"].is_null() && v["wirtinger_count"].is_null());
}

#[test]
fn series_json() {
    let v = call_json(&["series", "unknot", "--q-h", "2", "--f-h", "1", "--order", "4", "--json"]);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "0", "1", "0", "1/2"]));
}

#[test]
fn dim_k3_and_blow_up() {
    let v = call_json(&["dim", "--k3", "--n", "4", "--json"]);
    assert_eq!(v["kappa"], "15/4");
    assert_eq!(v["dim"], 0);
    let v = call_json(&["dim", "--blow-up", "--n", "5", "--json"]);
    assert_eq!(v["kappa"], "2/5");
    assert_eq!(v["framed_dim"], 8);
    let (code, _, err) = call(&["dim", "--n", "3", "--b2-plus", "1", "--c2", "2", "--c1-sq", "0"]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("warning"));
}

#[test]
fn mahler_outputs() {
    let (code, out, _) = call(&["mahler", "4_1", "--n-max", "15", "--csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("N,q_N"));
    assert_eq!(lines.len(), 1 + 7);
    assert!(lines[1].starts_with("3,16,"));
    let v = call_json(&["mahler", "4_1", "--n-max", "9", "--json"]);
    assert!((v["mahler_roots"].as_f64().unwrap() - 2.618_033_988_749_895).abs() < 1e-10);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn custom_table() {
    let dir = std::env::temp_dir().join(format!("psun-table-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("knots.txt");
    std::fs::write(&path, "# custom\nmy_trefoil: 1 1 1\n").unwrap();
    let (code, out, _) = call(&["--table", path.to_str().unwrap(), "invariant", "my_trefoil", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("my_trefoil N=2: 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn error_exit_codes() {
    let (code, _, err) = call(&["invariant", "9_42", "--n", "2"]);
    assert_eq!(code, EXIT_COMPUTATION);
    assert!(err.contains("UnknownKnot"));
    let (code, _, err) = call(&["alexander", "1 1"]);
    assert_eq!(code, EXIT_COMPUTATION);
    assert!(err.contains("NotAKnot"), "{err}");
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["invariant", "3_1"]).0, EXIT_USAGE);
    assert_eq!(call(&["dim", "--n", "3"]).0, EXIT_USAGE);
}

#[test]
fn binary_is_reproducible() {
    let run_bin = || {
        Command::new(env!("CARGO_BIN_EXE_psun"))
            .args(["mahler", "5_2", "--n-max", "11", "--json"])
            .output()
            .unwrap()
    };
    let (a, b) = (run_bin(), run_bin());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_psun")).arg("--nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn selftest_passes() {
    let v = call_json(&["selftest", "--json"]);
    assert_eq!(v["passed"], true, "{v}");
    assert_eq!(v["criteria"].as_array().unwrap().len(), 11);
}
