use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mumford")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const H2: &str = r#"{"h":{"coeffs":["0","0","0","1","-2","1"]}}"#;
const UNIQUE: &str = r#"{"g":2,"u":{"coeffs":["0","-1","1"]},"v":{"coeffs":[]},"w":{"coeffs":["0","0","-1","1"]}}"#;

#[test]
fn classify_the_zero_dimensional_stratum() {
    let d = TempDir::new().unwrap();
    let (h, p) = (write(&d, "h.json", H2), write(&d, "p.json", UNIQUE));
    let out = run(&["classify", "--point", s(&p), "--h", s(&h)]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["i"], 0);
    assert_eq!(v["q"]["coeffs"], serde_json::json!(["0/1", "-1/1", "1/1"]));

    let float = json(&run(&["classify", "--point", s(&p), "--h", s(&h), "--mode", "float"]));
    assert_eq!(float["i"], 0);
}

#[test]
fn off_fiber_point_is_an_error() {
    let d = TempDir::new().unwrap();
    let h = write(&d, "h.json", r#"{"h":{"coeffs":["0","0","0","1"]}}"#);
    let p = write(&d, "p.json", r#"{"g":1,"u":{"coeffs":["1","1"]},"v":{"coeffs":["1"]},"w":{"coeffs":["0","0","1"]}}"#);
    let out = run(&["classify", "--point", s(&p), "--h", s(&h)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].as_str().unwrap().contains("fiber"));
}

#[test]
fn malformed_input_and_arguments_give_json_errors() {
    let d = TempDir::new().unwrap();
    let bad = write(&d, "bad.json", "{ not json");
    for args in [
        vec!["fiber-strata", "--h", s(&bad)],
        vec!["fiber-strata", "--h", "/nonexistent/h.json"],
        vec!["frobnicate"],
        vec!["verify", "--epsilon", "-1"],
    ] {
        let out = run(&args);
        assert!(!out.status.success(), "{args:?}");
        assert!(json(&out)["error"].is_string(), "{args:?}");
    }
}

#[test]
fn fiber_strata_lists_four_labels() {
    let d = TempDir::new().unwrap();
    let h = write(&d, "h.json", H2);
    let out = run(&["fiber-strata", "--h", s(&h)]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["labels"].as_array().unwrap().len(), 4);
    assert_eq!(v["rho_h"], 2);
    assert_eq!(v["closure_consistent"], true);
}

#[test]
fn sample_round_trips_through_classify_and_is_deterministic() {
    let d = TempDir::new().unwrap();
    let h = write(&d, "h.json", H2);
    let q = write(&d, "q.json", r#"{"coeffs":["-1","1"]}"#);
    let args = ["sample", "--h", s(&h), "--i", "1", "--q", s(&q), "--exact", "--seed", "5"];
    let first = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, run(&args).stdout);

    let point = write(&d, "p.json", &json(&first)["point"].to_string());
    let label = json(&run(&["classify", "--point", s(&point), "--h", s(&h)]));
    assert_eq!(label["i"], 1);
    assert_eq!(label["q"]["coeffs"], serde_json::json!(["-1/1", "1/1"]));

    let mismatch = run(&["sample", "--h", s(&h), "--i", "0", "--q", s(&q)]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn jacobian_rank_of_the_most_singular_genus_one_point() {
    let d = TempDir::new().unwrap();
    let p = write(&d, "p.json", r#"{"g":1,"u":{"coeffs":["0","1"]},"v":{"coeffs":[]},"w":{"coeffs":["0","0","1"]}}"#);
    let v = json(&run(&["jacobian", "--point", s(&p)]));
    assert_eq!((v["rank"].as_u64(), v["rho"].as_u64()), (Some(2), Some(1)));
    assert_eq!(v["rank_law_holds"], true);
}

#[test]
fn verify_strata_passes_and_writes_out_file() {
    let d = TempDir::new().unwrap();
    let out_file = d.path().join("report.json");
    let out = run(&["verify", "strata", "--out", s(&out_file)]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["passed"], true);
    let tags: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["tag"].as_str().unwrap()).collect();
    assert_eq!(tags, ["theo1", "prop1", "PG", "p@", "t43"]);
    let saved: Value = serde_json::from_str(&fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(saved, v);
}

#[test]
fn flow_conserves_invariants() {
    let d = TempDir::new().unwrap();
    let p = write(&d, "p.json", r#"{"g":2,"u":{"coeffs":["3","3","1"]},"v":{"coeffs":["-3","1"]},"w":{"coeffs":["1","2","1","1"]}}"#);
    let out = run(&["flow", "--point", s(&p), "--i", "1", "--t", "1", "--dt", "0.001"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["max_rel_drift"].as_f64().unwrap() <= 1e-8);
    assert_eq!(v["steps"], 1000);

    let bad = run(&["flow", "--point", s(&p), "--i", "2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn vector_fields_vanish_at_a_common_root() {
    let d = TempDir::new().unwrap();
    let p = write(&d, "p.json", UNIQUE);
    let v = json(&run(&["vector-fields", "--point", s(&p)]));
    assert_eq!(v["sigma"], 0);
    for f in v["fields"].as_array().unwrap() {
        for c in ["du", "dv", "dw"] {
            assert!(f[c]["coeffs"].as_array().unwrap().is_empty());
        }
    }
}

#[test]
fn full_verify_is_green_and_reproducible() {
    let a = run(&["verify", "all", "--seed", "11"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, run(&["verify", "all", "--seed", "11"]).stdout);
    let tags: Vec<String> =
        json(&a)["results"].as_array().unwrap().iter().map(|r| r["tag"].as_str().unwrap().to_string()).collect();
    for t in ["d0", "thPG", "rp", "theo1", "prop1", "lem1", "p@", "t43", "PG"] {
        assert!(tags.iter().any(|x| x == t), "{t} missing");
    }
}
