use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], cache: Option<&std::path::Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lietori"));
    c.args(args).env_remove("LIETORI_CACHE_DIR");
    match cache {
        Some(d) => c.arg("--cache-dir").arg(d),
        None => c.arg("--no-cache"),
    };
    c.output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = vec!["--output", "json"];
    a.extend_from_slice(args);
    let out = run(&a, None);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (out.status.code().unwrap(), v)
}

#[test]
fn table3_rows() {
    let (code, v) = json(&["table3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    let cases = v["result"]["cases"].as_array().unwrap();
    // the class count plus nine rows
    assert_eq!(cases.len(), 10);
    assert!(cases.iter().all(|c| c["status"] == "match"));
}

#[test]
fn basesize_u42() {
    let (code, v) = json(&["basesize", "U", "4", "2", "--torus", "1,1,1,1;"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["b"], 4);
    assert_eq!(r["n_order"], "648");
    let orders: Vec<&str> = r["intersections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["order"].as_str().unwrap())
        .collect();
    assert_eq!(orders, ["24", "54"]);
}

#[test]
fn one_token_and_three_token_specs_agree() {
    let (_, a) = json(&["tori", "U", "4", "2"]);
    let (_, b) = json(&["qhat", "U4(2)", "--torus", "1^4"]);
    assert_eq!(a["result"]["classes"].as_array().unwrap().len(), 5);
    assert_eq!(b["result"]["reports"][0]["verdict"], "inconclusive");
    let (_, c) = json(&["qhat", "U", "4", "2", "--torus", "1^4"]);
    assert_eq!(b["result"], c["result"]);
}

#[test]
fn eta_brute_force_path() {
    let (code, v) = json(&["eta", "Sp", "6", "2", "--t", "31/100"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["below_one"], true);
    assert_eq!(v["result"]["path"], "brute_force");
    let hi: f64 = v["result"]["value"][1].as_str().unwrap().parse().unwrap();
    assert!(hi < 1.0);
}

#[test]
fn eta_from_class_csv() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("l32.csv");
    // L3(2): 21 involutions, 56 elements of order 3, 48 of order 7
    std::fs::write(&f, "order,size,count\n2,21,1\n3,56,1\n7,24,2\n").unwrap();
    let (code, v) = json(&["eta", "L3(2)", "--t", "1/3", "--classes", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["path"], "ingested");
    assert_eq!(v["result"]["classes"].as_array().unwrap().len(), 4);
    let (_, w) = json(&["eta", "L3(2)", "--t", "1/3"]);
    assert_eq!(v["result"]["value"], w["result"]["value"]);
}

#[test]
fn exceptional_qhat_without_torus() {
    let (code, v) = json(&["qhat", "E8(2)"]);
    assert_eq!(code, 0);
    let reps = v["result"]["reports"].as_array().unwrap();
    assert!(!reps.is_empty());
    assert!(reps.iter().all(|r| r["verdict"] == "certified_b2"));
}

#[test]
fn vdovin_reports_the_u33_exception() {
    let (code, v) = json(&["vdovin", "U3(3)", "--torus", "1,1,1;"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["p_group_intersection"], false);
    assert_eq!(v["result"]["intersection_orders"], serde_json::json!(["4", "6", "16"]));
}

#[test]
fn claims_section_mismatch_exits_one() {
    let out = run(&["claims", "--section", "vdovin"], None);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("MISMATCH vdovin/U3(3)/1,1,1;"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["basesize", "X", "4", "2", "--torus", "1"][..],
        &["basesize", "U4(2)", "--torus", "7,7"],
        &["eta", "L3(2)", "--t", "abc"],
        &["qhat", "L3(2)"],
        &["claims"],
        &["--max-degree", "0", "table3"],
        &["tori", "S", "4", "3", "--twisted"],
    ] {
        let out = run(args, None);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn exceeding_limits_is_reported() {
    let out = run(&["--max-index", "10", "basesize", "U4(2)", "--torus", "1^4"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["--output", "json", "basesize", "L3(2)", "--torus", "3"];
    let a = run(&args, None);
    let b = run(&args, None);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn seed_is_recorded() {
    let (_, v) = json(&["--seed", "42", "vdovin", "L3(2)", "--torus", "2,1"]);
    assert_eq!(v["seed"], "42");
}

#[test]
fn cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--output", "json", "basesize", "U4(2)", "--torus", "1^4"];
    let first = run(&args, Some(dir.path()));
    let files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(files.len(), 1, "{files:?}");
    assert!(files[0].to_str().unwrap().starts_with("basesize-"));
    let second = run(&args, Some(dir.path()));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, run(&args, None).stdout);
}

#[test]
fn csv_output() {
    let out = run(&["--output", "csv", "tori", "L", "3", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().next(), Some("class"));
    assert_eq!(rdr.records().count(), 3);
}
