use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn freehop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freehop")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn read(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn entry<'a>(v: &'a Value, g2: u64, k: &[u64]) -> Option<&'a str> {
    v["entries"]
        .as_array()?
        .iter()
        .find(|e| e["g2"] == g2 && e["k"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).eq(k.iter().copied()))
        .and_then(|e| e["value"].as_str())
}

#[test]
fn weak_degree_one_has_a_single_entry() {
    let v = json(&freehop(&["hurwitz", "--d", "1", "--kind", "weak", "--hbar", "4"]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["value"], "1");
}

#[test]
fn strict_degree_two() {
    let v = json(&freehop(&["hurwitz", "--d", "2", "--kind", "strict"]));
    let hit = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["lambda"] == serde_json::json!([2]) && e["nu"] == serde_json::json!([1, 1]) && e["r"] == 1)
        .unwrap();
    assert_eq!(hit["value"], "1/2");
}

#[test]
fn hurwitz_degree_bound_is_an_input_error() {
    assert_eq!(freehop(&["hurwitz", "--d", "7", "--kind", "strict"]).status.code(), Some(2));
}

#[test]
fn gue_catalan_at_degree_eight() {
    let v = json(&freehop(&["gue", "--genus", "2", "--deg", "8"]));
    assert_eq!(entry(&v["moments"], 0, &[8]), Some("14"));
    assert_eq!(entry(&v["moments"], 2, &[6]), Some("10"));
    assert_eq!(entry(&v["cumulants"], 0, &[2]), Some("1"));
}

#[test]
fn round_trip_reproduces_the_input_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    let m = dir.path().join("m.json");
    let back = dir.path().join("back.json");
    std::fs::write(&c, r#"{"degree": 4, "entries": [{"g2": 0, "k": [1, 1], "value": "1/3"}, {"g2": 0, "k": [2], "value": "1"}, {"g2": 2, "k": [3], "value": "-2"}]}"#).unwrap();
    let p = |x: &Path| x.to_str().unwrap().to_string();
    for (dir, route, src, dst) in [("c2m", "hurwitz", &c, &m), ("m2c", "convolution", &m, &back)] {
        let out = freehop(&["transform", dir, "--route", route, "--in", &p(src), "--out", &p(dst), "--genus", "2"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (input, output) = (read(&c), read(&back));
    assert_eq!(input["entries"], output["entries"]);
    assert_eq!(output["metadata"]["route"], "convolution");
    assert_eq!(output["metadata"]["direction"], "m2c");
}

#[test]
fn malformed_input_and_truncation_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let out = out.to_str().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(freehop(&["transform", "c2m", "--route", "hurwitz", "--in", bad.to_str().unwrap(), "--out", out, "--deg", "4"]).status.code(), Some(2));
    let short = dir.path().join("short.json");
    std::fs::write(&short, r#"{"degree": 4, "entries": [{"g2": 0, "k": [2], "value": "1"}]}"#).unwrap();
    assert_eq!(freehop(&["transform", "c2m", "--route", "formula", "--in", short.to_str().unwrap(), "--out", out, "--deg", "8"]).status.code(), Some(3));
}

#[test]
fn verify_reports_and_exit_codes() {
    let v = json(&freehop(&["verify", "--suite", "gue", "--deg", "8"]));
    assert_eq!(v["suite"], "gue");
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert_eq!(freehop(&["verify", "--suite", "unknown"]).status.code(), Some(2));
}

#[test]
fn moebius_on_two_points() {
    let v = json(&freehop(&["moebius", "--d", "2"]));
    let values: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1", "-1", "1"]);
}

#[test]
fn csv_output_has_a_header() {
    let out = freehop(&["--csv", "gue", "--genus", "0", "--deg", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("g2,k,value\n"));
    assert!(text.contains("0,4,2"));
}
