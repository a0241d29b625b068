use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn wordmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordmap"))
        .args(args)
        .env_remove("WORDMAP_CATALOG")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = wordmap(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(schema_file: &str, v: &Value) {
    let validator = schema(schema_file);
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_file}: {errors:?}\n{v}");
}

#[test]
fn commutator_distribution_on_q8() {
    let v = json(&["dist", "--group", "Q8", "--word", "[x,y]", "--vars", "2"]);
    assert_eq!(v["counts"], serde_json::json!([40, 24, 0, 0, 0, 0, 0, 0]));
    assert_eq!(v["total"], 64);
    assert_valid("distribution.schema.json", &v);
}

#[test]
fn q8_distribution_set() {
    let v = json(&["distset", "--group", "Q8", "--vars", "2"]);
    assert_eq!(v["map_count"], 32);
    assert_eq!(v["distributions"].as_array().unwrap().len(), 4);
    assert_valid("distset.schema.json", &v);
}

#[test]
fn checks_by_method() {
    let v = json(&["check", "nilpotent", "--group", "S3", "--method", "dist1"]);
    assert_eq!(v["result"], false);
    assert_valid("check.schema.json", &v);
    let v = json(&["check", "nilpotent", "--group", "Q8", "--method", "dist2"]);
    assert_eq!(v["result"], true);
    assert_valid("check.schema.json", &v);
    let v = json(&["check", "abelian", "--group", "Heis3", "--method", "dist2"]);
    assert_eq!(v["result"], false);
    let v = json(&["check", "invariants", "--group", "C2xC6", "--method", "dist2"]);
    assert_eq!(v["result"], serde_json::json!([2, 6]));
    assert_valid("check.schema.json", &v);
    let v = json(&["check", "invariants", "--group", "Q8"]);
    assert!(v["result"].is_null());
    assert_valid("check.schema.json", &v);
}

#[test]
fn group_summary() {
    let v = json(&["group", "--group", "Heis3"]);
    assert_eq!((v["order"].as_u64(), v["exponent"].as_u64()), (Some(27), Some(3)));
    assert_eq!(v["abelian"], false);
    assert_valid("group.schema.json", &v);
    let v = json(&["group", "--group", "C2xC3"]);
    assert_eq!(v["invariants"], serde_json::json!([6]));
}

#[test]
fn compare_and_sylow() {
    let v = json(&["compare", "--group", "D8", "--group2", "Q8", "--vars", "2"]);
    assert_eq!(v["result"], "different");
    assert_valid("compare.schema.json", &v);
    let v = json(&["compare", "--group", "Heis3", "--group2", "C3xC3xC3"]);
    assert_eq!(v["result"], "equal");
    assert_eq!(v["perm"][0], 0);
    assert_valid("compare.schema.json", &v);
    let v = json(&["sylow", "--group", "C6", "--prime", "2"]);
    assert_eq!(v["distributions"], serde_json::json!([[1, 1], [2, 0]]));
    assert_valid("distset.schema.json", &v);
}

#[test]
fn witness_output() {
    let v = json(&["witness", "--group", "A4"]);
    assert_eq!(v["nilpotent"], false);
    assert_valid("witness.schema.json", &v);
    assert_valid("distribution.schema.json", &v["distribution"]);
    let v = json(&["witness", "--group", "Q8"]);
    assert!(v["witness"].is_null());
    assert_valid("witness.schema.json", &v);
}

#[test]
fn verify_examples() {
    let v = json(&["verify", "amit-vishne"]);
    assert_eq!(v["verdict"], "pass");
    assert_valid("report.schema.json", &v);
    let v = json(&["verify", "sylow-product", "--group", "C12"]);
    assert_eq!(v["verdict"], "pass");
    let v = json(&["verify", "uniform-theorem", "--group", "A4"]);
    assert_eq!(v["verdict"], "pass");
    assert!(v["details"]["witness"]["word"].is_string());
    let v = json(&["verify", "all", "--group", "C6"]);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|r| r["verdict"] == "pass"));
    assert_valid("report.schema.json", &v);
}

#[test]
fn tsv_output() {
    let out = wordmap(&["distset", "--group", "C2", "--format", "tsv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\t1\n2\t0\n");
    let out = wordmap(&["dist", "--group", "C3", "--word", "x^3", "--format", "tsv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "3\t0\t0\n");
    let out = wordmap(&["verify", "frobenius", "--group", "S3", "--format", "tsv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "frobenius\tS3\tpass\n");
}

#[test]
fn parameters_bind_constants() {
    let v = json(&["dist", "--group", "Q8", "--word", "x1 g0 [x1,x2]", "--params", "3"]);
    assert_eq!(v["uniform"], true);
    let out = wordmap(&["dist", "--group", "Q8", "--word", "x1 g0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = wordmap(&["dist", "--group", "Q8", "--word", "x1 g0", "--params", "a"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--params"));
}

#[test]
fn exit_codes() {
    let out = wordmap(&["dist", "--group", "Q9", "--word", "x"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--group") && err.contains("Heis<p>"), "{err}");

    let out = wordmap(&["dist", "--group", "Q8", "--word", "x^"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--word") && err.contains("position 2") && err.contains("term :="), "{err}");

    let out = wordmap(&["dist", "--group", "S3", "--word", "x y z x", "--tuple-budget", "100"]);
    assert_eq!(out.status.code(), Some(2));

    let out = wordmap(&["distset", "--group", "S3", "--vars", "2", "--map-cap", "10"]);
    assert_eq!(out.status.code(), Some(2));

    let out = wordmap(&["nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    let out = wordmap(&["verify", "fermat", "--group", "C2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = wordmap(&["verify", "frobenius"]);
    assert_eq!(out.status.code(), Some(1));
    let out = wordmap(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("D8 has order 8"));
}

#[test]
fn mathematical_failures_are_not_errors() {
    let v = json(&["verify", "sylow-product", "--group", "S3"]);
    assert_eq!(v["verdict"], "inconclusive");
    let v = json(&["check", "abelian", "--group", "S3", "--method", "dist2"]);
    assert_eq!(v["result"], false);
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["verify", "amit-conjecture", "--group", "Heis3", "--seed", "9"];
    let a = wordmap(&args).stdout;
    let b = wordmap(&args).stdout;
    assert_eq!(a, b);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    assert_eq!(wordmap(&threaded).stdout, a);
    let big = ["dist", "--group", "S4", "--word", "[x,y][y,z][z,x4]", "--vars", "4"];
    let one = wordmap(&[&big[..], &["--threads", "1"]].concat()).stdout;
    let four = wordmap(&[&big[..], &["--threads", "4"]].concat()).stdout;
    assert_eq!(one, four);
}

#[test]
fn cayley_catalog_directory() {
    let dir = std::env::temp_dir().join(format!("wordmap-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("c3.txt"), "3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_wordmap"))
        .args(["verify", "frobenius", "--catalog"])
        .env("WORDMAP_CATALOG", &dir)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 15);
    assert!(reports.last().unwrap()["group"].as_str().unwrap().starts_with("cayley:"));
    assert!(reports.iter().all(|r| r["verdict"] == "pass"));
}
