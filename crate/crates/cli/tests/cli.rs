use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (Value, i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gentle")).args(args).output().expect("binary runs");
    let body = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (body, out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn example(name: &str) -> String {
    format!("{}/../core/examples/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn goldens_are_reproduced_byte_for_byte() {
    let kron = example("kronecker.alg");
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("demo_a0.json", vec!["demo-a0"]),
        ("kronecker_enumerate.json", vec!["enumerate", &kron, "--max-arrows", "4", "--bands"]),
        ("kronecker_band_complex.json", vec!["complex", &kron, "--walk", "a, ~b", "--band", "--lambda", "1/2", "--mult", "2"]),
        ("kronecker_band_cohomology.json", vec!["cohomology", &kron, "--walk", "a, ~b", "--band", "--lambda", "1/2", "--mult", "2"]),
        ("kronecker_spectrum.json", vec!["spectrum", &kron, "--max-arrows", "6", "--reduce-check", "--bands"]),
    ];
    for (file, args) in cases {
        let (_, _, text) = run(&args);
        assert_eq!(text, golden(file), "{file}");
    }
}

#[test]
fn validate_and_basis_of_a0() {
    let (body, code, _) = run(&["validate", &example("a0.alg")]);
    assert_eq!(code, 0);
    assert_eq!(body["pass"], json!(true));
    let (body, _, _) = run(&["basis", &example("a0.alg")]);
    let dims: Vec<u64> = body["projectives"].as_array().unwrap().iter().map(|p| p["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![3, 6, 1, 4, 3, 2, 1]);
}

#[test]
fn kronecker_is_not_discrete() {
    let (body, code, _) = run(&["discrete", &example("kronecker.alg")]);
    assert_eq!(code, 0);
    assert_eq!(body["derived_discrete"], json!(false));
    assert!(body["band"]["walk"].is_string());
    let (body, _, _) = run(&["discrete", &example("a0.alg")]);
    assert_eq!(body["derived_discrete"], json!(true));
}

#[test]
fn reduce_reports_a_trace() {
    let (body, code, _) = run(&["reduce", &example("a0.alg"), "--walk", "a1"]);
    assert_eq!(code, 0);
    assert_eq!(body["case_tag"], json!("ONE_SIDED_END"));
    assert_eq!(body["output_cohomology"]["hl"], json!(3));
    let (body, code, _) = run(&["reduce", &example("a0.alg"), "--walk", "a1", "--negative"]);
    assert_eq!(code, 0);
    assert_eq!(body["output_cohomology"]["hl"], json!(3));
    let (body, code, _) = run(&["reduce", &example("kronecker.alg"), "--walk", "a, ~b", "--band", "--mult", "3"]);
    assert_eq!(code, 0);
    assert_eq!(body["case_tag"], json!("BAND_UNWIND"));
    assert_eq!(body["output_cohomology"]["hl"].as_u64().unwrap() + 1, body["input_cohomology"]["hl"].as_u64().unwrap());
}

#[test]
fn beta_flag_erases_the_leftmost_degree() {
    let (body, _, _) = run(&["cohomology", &example("a0.alg"), "--walk", "a1", "--beta"]);
    assert_eq!(body, json!({"dims": {"0": 1}, "hl": 1, "hw": 1, "hr": 1}));
}

#[test]
fn printed_literals_reparse() {
    let (body, _, _) = run(&["enumerate", &example("three_cycle.alg"), "--max-arrows", "6"]);
    for w in body["strings"].as_array().unwrap() {
        let lit = w["walk"].as_str().unwrap();
        let (again, code, _) = run(&["cohomology", &example("three_cycle.alg"), "--walk", lit]);
        assert_eq!(code, 0, "{lit}: {again}");
    }
}

#[test]
fn input_errors_exit_one_with_an_error_object() {
    let cases: Vec<(Vec<String>, &str)> = vec![
        (vec!["basis".into(), "/nonexistent.alg".into()], "io"),
        (vec!["cohomology".into(), example("a0.alg"), "--walk".into(), "zz".into()], "unknown_arrow"),
        (vec!["cohomology".into(), example("kronecker.alg"), "--walk".into(), "a, ~b".into(), "--band".into(), "--lambda".into(), "0.5".into()], "scalar"),
        (vec!["cohomology".into(), example("kronecker.alg"), "--walk".into(), "a, ~b".into(), "--band".into(), "--lambda".into(), "0".into()], "zero_lambda"),
        (vec!["reduce".into(), example("a0.alg"), "--walk".into(), "a4".into()], "precondition"),
    ];
    for (args, kind) in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (body, code, _) = run(&refs);
        assert_eq!(code, 1, "{args:?}");
        assert_eq!(body["error"]["kind"], json!(kind), "{args:?}: {body}");
    }
}

#[test]
fn demo_exit_code_reflects_the_claims() {
    let (body, code, _) = run(&["demo-a0"]);
    let pass = body["pass"].as_bool().unwrap();
    assert_eq!(code, if pass { 0 } else { 3 });
    let hr: Vec<u64> = body["hr_values"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert!(hr.contains(&8) && !hr.contains(&7));
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["spectrum", &example("a0.alg"), "--max-arrows", "10", "--reduce-check"];
    let one = Command::new(env!("CARGO_BIN_EXE_gentle")).args(args).env("GENTLE_THREADS", "1").output().unwrap();
    let auto = Command::new(env!("CARGO_BIN_EXE_gentle")).args(args).env("GENTLE_THREADS", "0").output().unwrap();
    assert_eq!(one.stdout, auto.stdout);
    assert_eq!(one.status.code(), Some(0));
}
