use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitjac"))
        .args(args)
        .env_remove("SPLITJAC_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn schema(name: &str) -> Value {
    let path = format!("{}/../../schemas/{name}.v1.schema.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Runs with `--json`, checks the exit code and validates against the schema.
fn json_run(args: &[&str], name: &str, expect: i32) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert_eq!(code(&o), expect, "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    let validator = jsonschema::validator_for(&schema(name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
    assert_eq!(doc["schema"], format!("splitjac/{name}/v1"));
    doc
}

#[test]
fn igusa_output() {
    let doc = json_run(&["igusa", "--coeffs", "0,-1,0,0,0,1"], "igusa", 0);
    assert_eq!(doc["result"]["invariants"]["j10"], "-256");
    assert_eq!(doc["rng_seed"], 42);
}

#[test]
fn ramification_catalogue_and_profile() {
    let doc = json_run(&["ramification", "--degree", "8"], "ramification", 0);
    let entries = doc["result"]["entries"].as_array().unwrap();
    let ii5 = entries.iter().find(|e| e["label"] == "II.5").unwrap();
    assert_eq!(ii5["report"]["riemann_hurwitz_sum"], 11);
    json_run(&["ramification", "--degree", "8", "--profile", "2^3,2^3,2^3,2^4,2"], "ramification-profile", 0);
    json_run(&["ramification", "--degree", "8", "--profile", "2^2,2^3,2^2,2^4"], "ramification-profile", 3);
    assert_eq!(code(&run(&["ramification", "--degree", "7"])), 2);
}

#[test]
fn braid_table_check() {
    let doc = json_run(&["braid", "--table1", "--check"], "braid-table", 0);
    assert_eq!(doc["result"]["all_match"], true);
    let o = run(&["braid", "--table1", "--check"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5);
}

#[test]
fn braid_table_mismatch_exits_3() {
    let path = std::env::temp_dir().join(format!("splitjac-table-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"degree": 8, "genus_convention": "pure-lambda-line", "rows": [
            {"case": "1", "cycle_types": ["2^4","2^3","2^3","2^4"], "orbit_length": 5, "group_order": 16, "dimension": 1, "genus": 0}]}"#,
    )
    .unwrap();
    let o = run(&["braid", "--table1", "--check", "--table", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&o), 3);
}

#[test]
fn braid_with_genus() {
    let doc = json_run(&["braid", "--types", "2^3,2^3,4.2,2^4", "--genus"], "braid", 0);
    assert_eq!(doc["result"]["orbits"][0]["genus"], 4);
    let empty = json_run(&["braid", "--types", "2,2,2"], "braid", 0);
    assert_eq!(empty["result"]["class_size"], 0);
    assert!(empty["result"]["diagnostic"].as_str().unwrap().contains("odd"));
    assert_eq!(code(&run(&["braid", "--types", "2^4,2^4"])), 2);
}

#[test]
fn family4_exits() {
    let o = run(&["family4", "--b", "2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("(b-2)"));
    let doc = json_run(&["family4", "--b", "3", "--verify-locus"], "family4", 0);
    assert_eq!(doc["result"]["locus"]["residues"], serde_json::json!(["0", "0"]));
    json_run(&["family4", "--b", "-7/5"], "family4", 0);
    assert_eq!(code(&run(&["family4", "--b", "x"])), 64);
}

#[test]
fn humbert_output() {
    let doc = json_run(&["humbert", "--tau", "i,1/2,2i", "--height", "5", "--delta", "4"], "humbert", 0);
    let rels = doc["result"]["relations"].as_array().unwrap();
    assert!(rels.iter().any(|r| r["relation"] == serde_json::json!({"a": 0, "b": 2, "c": 0, "d": 0, "e": -1})));
    assert_eq!(code(&run(&["humbert", "--tau", "-i,0,i"])), 2);
}

#[test]
fn cover_solve_deterministic_across_threads() {
    let args = ["cover-solve", "--degree", "4", "--seeds", "60", "--rng", "7"];
    let one = json_run(&[&["--threads", "1"], &args[..]].concat(), "cover-solve", 0);
    let four = json_run(&[&["--threads", "4"], &args[..]].concat(), "cover-solve", 0);
    assert_eq!(one, four);
    assert_eq!(one["rng_seed"], 7);
    let env = Command::new(env!("CARGO_BIN_EXE_splitjac"))
        .args(["--json"])
        .args(args)
        .env("SPLITJAC_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(serde_json::from_slice::<Value>(&env.stdout).unwrap(), one);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&[])), 64);
    assert_eq!(code(&run(&["--threads", "0", "igusa", "--coeffs", "1,0,0,0,0,1"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["braid"])), 64);
}
