use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oreseries"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../schemas/{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn json_ok(args: &[&str], schema_name: &str) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let v: Value = serde_json::from_str(&ok(&full)).unwrap();
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} vs {schema_name}: {errors:?}\n{v}");
    v
}

const GF4: &str = "GF(4)[x^2]";
const FROB: &str = "GF(2)(t)[t->t^2]";

#[test]
fn documented_examples() {
    assert_eq!(
        ok(&["expand", "--field", GF4, "--fraction", "(1+a*T)^-1*(1)", "--n", "6"]),
        "[1, a, 1, a, 1, a] @ 6"
    );
    let guess = ok(&["guess", "--field", "QQ", "--coeffs", "[1,1,1,1,1,1]"]);
    assert!(guess.contains("denominator: 1 - T"), "{guess}");
    assert!(guess.contains("numerator: 1\n"), "{guess}");
    assert_eq!(ok(&["rank", "--field", GF4, "--fraction", "(1)^-1*(T)"]), "2");
}

#[test]
fn exit_codes() {
    let out = run(&["minpoly", "--field", FROB, "--fraction", "(1+t*T)^-1*(1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("RequiresAutomorphism"));

    let out = run(&["guess", "--field", "QQ", "--coeffs", "[1,2,6,24,120,720,5040,40320]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NoRecurrenceFound"));

    let out = run(&["expand", "--field", "QQ", "--fraction", "(1-T"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ParseError"));

    assert_eq!(run(&["expand", "--fraction", "1"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["rank", "--field", "GF(6)", "--fraction", "1"]).status.code(), Some(1));
    assert_eq!(
        run(&["expand", "--field", "QQ", "--fraction", "1", "--rep", "{}"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn payloads_from_stdin_and_files() {
    let out = run_stdin(&["expand", "--field", "QQ", "--fraction", "-", "--n", "4"], "(1 - 2*T)^-1*(1)\n");
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "[1, 2, 4, 8] @ 4");

    let dir = std::env::temp_dir().join(format!("oreseries-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rep.json");
    std::fs::write(&path, r#"{"field": "QQ", "X": ["1"], "A": [["3"]], "Y": ["1"]}"#).unwrap();
    assert_eq!(
        ok(&["expand", "--rep", path.to_str().unwrap(), "--n", "3"]),
        "[1, 3, 9] @ 3"
    );
    std::fs::remove_dir_all(&dir).unwrap();

    let out = run_stdin(
        &["similar", "--field", "QQ", "--rep", "-", "--other", "-"],
        r#"{"X": ["1"], "A": [["1"]], "Y": ["1"]}"#,
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_outputs_match_schemas() {
    let s = json_ok(&["expand", "--field", GF4, "--fraction", "(1+a*T)^-1*(1)", "--n", "6"], "series");
    assert_eq!(s["precision"], 6);
    json_ok(&["expand", "--field", FROB, "--fraction", "(1+t*T)^-1*(1)", "--n", "4"], "series");

    let g = json_ok(&["guess", "--field", "QQ", "--coeffs", "[1,1,2,3,5,8,13,21,34,55]"], "guess");
    assert_eq!(g["denominator"], "1 - T - T^2");
    json_ok(&["guess", "--field", FROB, "--coeffs", "[1, t, t^3, t^7, t^15, t^31, t^63]", "--max-order", "1"], "guess");

    let k = json_ok(&["kronecker", "--field", "QQ", "--coeffs", "[1,1,2,3,5,8,13,21,34,55,89]"], "kronecker");
    assert_eq!(k["verdict"], "rational");
    let k = json_ok(&["kronecker", "--field", "QQ", "--coeffs", "[1,1,2,6,24,120,720,5040,40320]"], "kronecker");
    assert_eq!(k["verdict"], "unknown-at-precision");
    assert!(k["witness"].is_null());

    let m = json_ok(&["minpoly", "--field", GF4, "--fraction", "(1+a*T)^-1*(1)"], "minpoly");
    assert_eq!(m["degree"], 1);
    let c = json_ok(&["rank", "--field", "GF(5)(t)[t->t+1]", "--fraction", "(1 - t*T)^-1*(1 + T)"], "canonical");
    assert_eq!(c["rank"], 2);

    let rep = r#"{"field": "QQ", "X": ["1", "0", "1"], "A": [["1", "1", "0"], ["0", "1", "0"], ["2", "0", "0"]], "Y": ["1", "1", "0"]}"#;
    json_ok(&["minimize", "--rep", rep], "rep");
    json_ok(&["hadamard", "--rep", rep, "--other", rep], "rep");
    let b = json_ok(&["similar", "--rep", rep, "--other", rep], "similarity");
    assert_eq!(b["B"].as_array().unwrap().len(), 3);
    json_ok(&["regular", "--field", "QQ", "--fraction", "(1 - T)^-1*(1)"], "regularity");

    for (to, name) in [("fraction", "fraction"), ("rep", "rep"), ("rec", "recurrence")] {
        json_ok(&["convert", "--field", GF4, "--fraction", "(1 + a*T^2)^-1*(T)", "--to", to], name);
        json_ok(&["convert", "--field", FROB, "--fraction", "(1 + t*T)^-1*(1)", "--to", to], name)
            .as_object()
            .unwrap();
    }
}

#[test]
fn kronecker_csv_trace() {
    let csv = ok(&["kronecker", "--field", "QQ", "--coeffs", "[1,2,4,8,16]", "--csv"]);
    assert_eq!(csv, "m,det\n0,1\n1,0\n2,0");
}

#[test]
fn outputs_feed_back_unchanged() {
    let x = "(1 + a*T + T^2)^-1*(a + T)";
    for to in ["fraction", "rep", "rec"] {
        let out = ok(&["convert", "--field", GF4, "--fraction", x, "--to", to]);
        let again = ok(&["convert", "--field", GF4, &format!("--{to}"), &out, "--to", to]);
        assert_eq!(again, out, "{to}");
        let series = ok(&["expand", "--field", GF4, &format!("--{to}"), &out, "--n", "12"]);
        assert_eq!(series, ok(&["expand", "--field", GF4, "--fraction", x, "--n", "12"]));
    }

    let rep = ok(&["convert", "--field", "QQ", "--fraction", "(1 - T - T^2)^-1*(1)", "--to", "rep"]);
    assert_eq!(ok(&["minimize", "--rep", &rep]), rep);

    let series = ok(&["expand", "--field", "QQ", "--fraction", "(1 - T - T^2)^-1*(1)", "--n", "10"]);
    let guessed = ok(&["guess", "--field", "QQ", "--coeffs", &series, "--json"]);
    assert_eq!(ok(&["expand", "--fraction", &guessed, "--n", "10"]), series);

    let json = ok(&["expand", "--field", FROB, "--fraction", "(1+t*T)^-1*(1)", "--n", "5", "--json"]);
    let k = ok(&["kronecker", "--coeffs", &json, "--m-max", "2"]);
    assert!(k.starts_with("verdict: "), "{k}");
}
