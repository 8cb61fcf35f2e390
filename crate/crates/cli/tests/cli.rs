use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn blockqap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockqap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, doc: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(doc).unwrap()).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_out(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn non_monotone_example() -> Value {
    json!({
        "a": { "kind": "dense", "rows": [[2, 1, 1], [1, 0, 0], [1, 0, 0]] },
        "b": { "kind": "dense", "rows": [[0, 1, 1], [1, 0, 0], [1, 0, 0]] }
    })
}

#[test]
fn recognize_reports_classes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ex.json", &non_monotone_example());
    let r = json_out(&blockqap(&["recognize", arg(&f)]));
    assert_eq!(r["a"]["anti_monge"], json!(true));
    assert_eq!(r["a"]["monotone"], json!(false));
    assert_eq!(r["b"]["multicut"], json!(true));
    assert_eq!(r["b"]["multicut_sizes"], json!([1, 2]));

    let f = write(
        &dir,
        "prod.json",
        &json!({
            "a": { "kind": "product", "alpha": [1, 2, 2] },
            "b": { "kind": "multicut", "sizes": [1, 2] }
        }),
    );
    let r = json_out(&blockqap(&["recognize", arg(&f)]));
    assert_eq!(r["a"]["product"], json!(true));
    assert_eq!(r["a"]["factor"], json!(["1", "2", "2"]));
}

#[test]
fn oracle_finds_the_better_permutation() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ex.json", &non_monotone_example());
    let r = json_out(&blockqap(&["solve", "--oracle", arg(&f)]));
    assert_eq!(r["value"], json!("2"));
    assert_eq!(r["certification"], json!("oracle-exact"));
}

#[test]
fn product_block_solve_matches_oracle() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "pb.json",
        &json!({
            "a": { "kind": "product", "alpha": [1, 1, 2] },
            "b": { "kind": "block", "pattern": [[0, 2], [2, 1]], "sizes": [1, 2] }
        }),
    );
    let solved = json_out(&blockqap(&["solve", arg(&f)]));
    let oracle = json_out(&blockqap(&["solve", "--oracle", arg(&f)]));
    assert_eq!(solved["value"], json!("20"));
    assert_eq!(solved["value"], oracle["value"]);
    assert_eq!(solved["certification"], json!("theorem-optimal"));
}

#[test]
fn bad_rational_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "bad.json",
        &json!({
            "a": { "kind": "dense", "rows": [["1/0"]] },
            "b": { "kind": "dense", "rows": [[1]] }
        }),
    );
    let out = blockqap(&["solve", arg(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a.rows[0][0]"));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = blockqap(&["recognize", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unstructured_instance_is_unsupported() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "plain.json",
        &json!({
            "a": { "kind": "dense", "rows": [[0, 5, 1], [5, 0, 3], [1, 3, 7]] },
            "b": { "kind": "dense", "rows": [[4, 1, 0], [1, 2, 6], [0, 6, 1]] }
        }),
    );
    assert_eq!(blockqap(&["solve", arg(&f)]).status.code(), Some(3));
    assert_eq!(
        blockqap(&["solve", "--oracle", "--max-n", "2", arg(&f)]).status.code(),
        Some(3)
    );
    let r = json_out(&blockqap(&["solve", "--oracle", arg(&f)]));
    assert!(r["value"].is_string());
}

#[test]
fn classify_polynomial_pattern() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", &json!({ "pattern": [[0, 2], [2, 1]] }));
    let r = json_out(&blockqap(&["classify", arg(&f)]));
    assert_eq!(r["classification"], json!("PolynomialByCondition14"));
    assert_eq!(r["certified_polynomial"], json!(true));
}

#[test]
fn classify_heavy_pattern_has_a_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", &json!({ "pattern": [[2, 0], [0, 2]] }));
    let r = json_out(&blockqap(&["classify", arg(&f)]));
    assert_eq!(r["classification"], json!("NPHardByCondition16"));
    assert_eq!(r["witness"]["x_star"], json!(["1/2", "1/2"]));
}

#[test]
fn partition_reduction_shape_and_threshold() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "part.json",
        &json!({ "pattern": [[2, 0], [0, 2]], "values": ["1/2", "1/2", "1/2", "1/2"] }),
    );
    let out = dir.path().join("qap.json");
    let status = blockqap(&["reduce", "partition", arg(&f), "--output", arg(&out)]);
    assert!(status.status.success());
    let inst: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(inst["a"]["kind"], json!("product"));
    assert_eq!(inst["a"]["alpha"].as_array().unwrap().len(), 22);
    assert_eq!(
        inst["b"]["sizes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .sum::<u64>(),
        22
    );
    assert_eq!(inst["metadata"]["threshold"], json!("1"));

    // The pattern is hard, so the structured solver needs --force.
    assert_eq!(blockqap(&["solve", arg(&out)]).status.code(), Some(3));
    let r = json_out(&blockqap(&["solve", "--force", arg(&out)]));
    assert_eq!(r["certification"], json!("separable-heuristic"));
    assert!(r["at_most_threshold"].is_boolean());
}

#[test]
fn bisection_reduction_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "g.json",
        &json!({ "vertices": 4, "edges": [[1, 2], [2, 3], [3, 4], [4, 1]], "t": 2 }),
    );
    let r = json_out(&blockqap(&["reduce", "bisection", arg(&f)]));
    assert_eq!(r["b"], json!({ "kind": "multicut", "sizes": [2, 2] }));
    let inst = write(&dir, "qap.json", &r);
    let solved = json_out(&blockqap(&["solve", "--oracle", arg(&inst)]));
    assert_eq!(solved["at_most_threshold"], json!(true));

    let bad = write(&dir, "bad.json", &json!({ "vertices": 4, "edges": [[0, 1]], "t": 0 }));
    assert_eq!(blockqap(&["reduce", "bisection", arg(&bad)]).status.code(), Some(2));
}

#[test]
fn generated_multicut_is_in_normal_form_and_solvable() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("g.json");
    assert!(blockqap(&[
        "gen",
        "multicut",
        "--n",
        "7",
        "--q",
        "3",
        "--seed",
        "1",
        "--output",
        arg(&out)
    ])
    .status
    .success());
    let r = json_out(&blockqap(&["recognize", arg(&out)]));
    assert_eq!(r["b"]["normal_form"], json!(true));
    assert_eq!(r["a"]["monotone"], json!(true));
    assert_eq!(r["a"]["anti_monge"], json!(true));
    let solved = json_out(&blockqap(&["solve", arg(&out)]));
    let oracle = json_out(&blockqap(&["solve", "--oracle", arg(&out)]));
    assert_eq!(solved["identity"], json!(true));
    assert_eq!(solved["value"], oracle["value"]);
}

#[test]
fn every_generator_emits_readable_files() {
    let dir = TempDir::new().unwrap();
    for kind in ["anti-monge", "monotone-anti-monge", "product", "multicut"] {
        let out = dir.path().join(format!("{kind}.json"));
        let gen = blockqap(&["gen", kind, "--n", "6", "--seed", "3", "--output", arg(&out)]);
        assert!(gen.status.success(), "{kind}: {}", String::from_utf8_lossy(&gen.stderr));
        let solved = json_out(&blockqap(&["solve", arg(&out)]));
        let oracle = json_out(&blockqap(&["solve", "--oracle", arg(&out)]));
        assert_eq!(solved["value"], oracle["value"], "{kind}");
    }
    let out = dir.path().join("pattern.json");
    assert!(
        blockqap(&["gen", "pattern", "--n", "3", "--q", "3", "--output", arg(&out)])
            .status
            .success()
    );
    json_out(&blockqap(&["classify", arg(&out)]));
}

#[test]
fn generation_is_deterministic() {
    let a = blockqap(&["gen", "product", "--n", "5", "--seed", "9"]);
    let b = blockqap(&["gen", "product", "--n", "5", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_quick_is_green_and_deterministic() {
    let a = blockqap(&["verify", "--quick", "--seed", "5"]);
    let b = blockqap(&["verify", "--quick", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8_lossy(&a.stdout).lines().count(), 10);
}

#[test]
fn verify_rejects_unknown_criterion() {
    assert_eq!(blockqap(&["verify", "--only", "11"]).status.code(), Some(2));
    let one = blockqap(&["verify", "--quick", "--only", "6"]);
    assert_eq!(String::from_utf8_lossy(&one.stdout).lines().count(), 1);
}
