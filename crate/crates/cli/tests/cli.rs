use std::process::{Command, Output};

use serde_json::Value;

fn mf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mf")).args(args).output().expect("run mf")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = mf(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn build_nilpotent_sl3() {
    let (code, v) = json(&["build", "--n", "3", "--element", "n"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "mf-atlas/1");
    assert_eq!(v["result"]["b"], 5);
    assert_eq!(v["result"]["degrees"], serde_json::json!([2, 3]));
    assert_eq!(v["result"]["certificate"]["rank"], 5);
}

#[test]
fn build_sl2_with_parameter() {
    let (code, v) = json(&["build", "--n", "2", "--element", "s", "--param", "1"]);
    assert_eq!(code, 0);
    let scaled = v["result"]["scaled_components"].as_array().unwrap();
    assert_eq!(scaled[0], "x12*x21 + x11^2");
    assert_eq!(scaled[1], "2*x11");
}

#[test]
fn non_regular_is_invalid_input() {
    let out = mf(&["build", "--n", "3", "--param", "1", "--param", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not regular"));
    assert_eq!(mf(&["atlas", "--element", "q"]).status.code(), Some(2));
    assert_eq!(mf(&["build", "--n", "2", "--element", "r"]).status.code(), Some(2));
}

#[test]
fn irrational_eigenvalues_are_invalid_input() {
    let dir = std::env::temp_dir().join(format!("mf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("irr.json");
    std::fs::write(&path, r#"{"n":3,"entries":[["0","1","0"],["0","0","1"],["2","0","0"]]}"#).unwrap();
    let out = mf(&["count", "--matrix", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn atlas_counts_sl3() {
    for (el, borels, parabolics) in [("s", 6, 6), ("r", 3, 4), ("n", 1, 2)] {
        let (code, v) = json(&["atlas", "--n", "3", "--element", el]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["counts"]["borels"], borels, "{el}");
        assert_eq!(v["result"]["counts"]["parabolics"], parabolics, "{el}");
    }
}

#[test]
fn count_formulas() {
    let (_, v) = json(&["count", "--n", "2", "--element", "s"]);
    assert_eq!(v["result"]["total"]["exact"], 2);
    let (_, v) = json(&["count", "--n", "3", "--element", "s"]);
    assert_eq!(v["result"]["formula"], "|I'_s| + 0 + 6");
    assert_eq!(v["result"]["total"]["lower_bound"], 7);
    assert!(v["result"]["total"]["exact"].is_null());
}

#[test]
fn iprime_override() {
    let dir = std::env::temp_dir().join(format!("mf-cli-ip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("iprime.json");
    std::fs::write(&path, r#"{"entries":[{"n":3,"jordan_type":"1+1+1","value":{"exact":4}}]}"#).unwrap();
    let (code, v) = json(&["count", "--n", "3", "--iprime", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["total"]["exact"], 10);
    std::fs::write(&path, r#"{"entries":[{"n":2,"jordan_type":"2","value":{"exact":1}}]}"#).unwrap();
    assert_eq!(mf(&["count", "--iprime", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_passes_sl3_r() {
    let (code, v) = json(&["verify", "--n", "3", "--element", "r", "--seed", "7", "--samples", "20"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"poisson_commutativity") && names.contains(&"singular_family"));
}

#[test]
fn check_examples_passes() {
    let (code, v) = json(&["check-examples"]);
    assert_eq!(code, 0);
    assert!(v["result"]["checks"].as_array().unwrap().len() >= 20);
}

#[test]
fn deterministic_output_and_out_file() {
    let args = ["verify", "--n", "3", "--element", "s", "--seed", "11", "--samples", "10"];
    let a = mf(&args).stdout;
    let b = mf(&args).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);

    let dir = std::env::temp_dir().join(format!("mf-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("atlas.csv");
    let out = mf(&["atlas", "--n", "3", "--element", "r", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("schema,mf-atlas/1\nkind,composition,pattern\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("borel,")).count(), 3);
}
