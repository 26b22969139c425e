use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiring-lab"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("SEMIRING_LAB_MAX_ORDER")
        .env_remove("SEMIRING_LAB_BUDGET_SECS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn names(v: &Value) -> Vec<Vec<String>> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn analyze_matches_golden() {
    let out = run(&["analyze", "tests/data/three_element.txt"]);
    assert_eq!(out.status.code(), Some(0));
    let golden =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/analyze_three_element.json"))
            .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn analyze_three_element_sigma() {
    let r = json(&run(&["analyze", "tests/data/three_element.txt"]));
    let res = &r["results"];
    let pairs = names(&res["sigma"]["pairs"]);
    let has = |a: &str, b: &str| pairs.contains(&vec![a.to_string(), b.to_string()]);
    assert!(has("a", "b") && has("b", "c") && !has("a", "c"));
    assert_eq!(res["sigma"]["transitive"], false);
    assert_eq!(names(&res["sigma_star"]["pairs"]).len(), 9);
    assert_eq!(res["eta"]["agree"], true);
    assert_eq!(names(&res["eta"]["sigma_star"]), vec![vec!["a", "b", "c"]]);
    assert_eq!(r["failures"], Value::Array(vec![]));
}

#[test]
fn analyze_lattice_and_trivial() {
    let r = json(&run(&["analyze", "tests/data/two_lattice.txt"]));
    for v in ["D", "D_dot", "L_dot", "R_dot", "N"] {
        assert_eq!(r["results"]["varieties"][v], true, "{v}");
    }
    let r = json(&run(&["analyze", "tests/data/trivial.txt"]));
    assert_eq!(r["results"]["eta"]["agree"], true);
    assert_eq!(r["results"]["sigma"]["transitive"], true);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["analyze", "tests/data/malformed.txt"]), Some(2));
    assert_eq!(code(&["analyze", "tests/data/missing.txt"]), Some(2));
    assert_eq!(code(&["analyze", "tests/data/not_idempotent.txt"]), Some(3));
    assert_eq!(code(&["decompose", "tests/data/three_element.txt"]), Some(3));
    assert_eq!(code(&["decompose", "tests/data/two_lattice.txt"]), Some(0));
    assert_eq!(code(&["verify", "--suite", "NOPE", "--max-order", "1"]), Some(3));
    assert_eq!(code(&["verify", "--max-order", "9"]), Some(3));
    assert_eq!(code(&["verify", "--max-order", "4", "--budget-nodes", "1000"]), Some(4));
    assert_eq!(code(&["enumerate", "-n", "3", "--filter", "NOPE", "--count-only"]), Some(2));
}

#[test]
fn failures_empty_iff_success() {
    for args in [
        &["analyze", "tests/data/three_element.txt"][..],
        &["analyze", "tests/data/not_idempotent.txt"],
        &["decompose", "tests/data/three_element.txt"],
        &["verify", "--max-order", "4", "--budget-nodes", "1000"],
        &["verify", "--suite", "THM_3_1", "--max-order", "2"],
    ] {
        let out = run(args);
        let r = json(&out);
        let empty = r["failures"].as_array().unwrap().is_empty();
        assert_eq!(empty, out.status.code() == Some(0), "{args:?}");
        assert_eq!(r["schema"], 1);
    }
}

#[test]
fn budget_exhaustion_is_marked_partial() {
    let r = json(&run(&["verify", "--max-order", "4", "--budget-nodes", "1000"]));
    let msg = r["failures"][0]["message"].as_str().unwrap();
    assert_eq!(r["failures"][0]["kind"], "budget");
    assert!(msg.contains("partial"), "{msg}");
}

#[test]
fn verify_is_worker_independent() {
    let a = run(&["verify", "--suite", "all", "--max-order", "2", "--workers", "1"]);
    let b = run(&["verify", "--suite", "all", "--max-order", "2", "--workers", "8"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_single_theorems() {
    for id in ["THM_3_1", "LEMMA_REGBAND"] {
        let r = json(&run(&["verify", "--suite", id, "--max-order", "3"]));
        assert_eq!(r["results"]["inconsistencies"], 0);
        assert_eq!(r["results"]["theorems"][id]["checked"], 396);
    }
    let r = json(&run(&["verify", "--suite", "all", "--max-order", "1"]));
    assert_eq!(r["results"]["inconsistencies"], 0);
}

#[test]
fn explore_sigma_counts() {
    let r = json(&run(&["explore-sigma", "--max-order", "1"]));
    let rows = r["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["sigma_transitive"], true);
    assert_eq!(rows[0]["sigma_is_eta"], true);

    // matches the brute-force classification in the core crate's tests
    let r = json(&run(&["explore-sigma", "--max-order", "3"]));
    let cross = &r["results"]["cross_table"];
    assert_eq!(cross["sigma_transitive=false in_N=false sigma_is_eta=false"], 18);
    assert_eq!(cross["sigma_transitive=true in_N=false sigma_is_eta=true"], 137);
    assert_eq!(cross["sigma_transitive=true in_N=true sigma_is_eta=true"], 241);
    assert_eq!(cross.as_object().unwrap().len(), 3);
    assert_eq!(r["results"]["sigma_transitive_not_in_n"], 137);
}

#[test]
fn explore_sigma_lists_the_three_element_example() {
    let example =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/three_element.txt")).unwrap();
    let example = semiring_lab::SemiringTable::parse(&example).unwrap();
    let stream = run(&["enumerate", "-n", "3"]);
    let tables: Vec<semiring_lab::SemiringTable> = String::from_utf8(stream.stdout)
        .unwrap()
        .split("%%\n")
        .map(|s| semiring_lab::SemiringTable::parse(s).unwrap())
        .collect();
    let index =
        tables.iter().position(|t| t.add_table() == example.add_table() && t.mul_table() == example.mul_table());
    let index = index.expect("example is enumerated");
    let r = json(&run(&["explore-sigma", "--max-order", "3"]));
    let row =
        r["results"]["rows"].as_array().unwrap().iter().find(|row| row["order"] == 3 && row["index"] == index).unwrap();
    assert_eq!(row["sigma_transitive"], false);
}

#[test]
fn enumerate_counts_and_stream() {
    let count = |args: &[&str]| String::from_utf8(run(args).stdout).unwrap().trim().parse::<usize>().unwrap();
    assert_eq!(count(&["enumerate", "-n", "2", "--count-only"]), 16);
    assert_eq!(count(&["enumerate", "-n", "3", "--count-only"]), 379);
    assert_eq!(count(&["enumerate", "-n", "3", "--iso", "--count-only"]), 81);
    let stream = String::from_utf8(run(&["enumerate", "-n", "2", "--iso"]).stdout).unwrap();
    assert_eq!(stream.split("%%\n").count(), 10);
}

#[test]
fn enumerate_filtered_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = run(&["enumerate", "-n", "3", "--iso", "--filter", "D", "--out-dir", d]);
    assert_eq!(out.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    // the 3-element chain is the only 3-element distributive lattice
    assert_eq!(files.len(), 1);
}

#[test]
fn decompose_lattice() {
    let r = json(&run(&["decompose", "tests/data/two_lattice.txt"]));
    let res = &r["results"];
    assert_eq!(res["s1_in_R_dot"], true);
    assert_eq!(res["s2_in_L_dot"], true);
    let d = semiring_lab::SemiringTable::parse(res["d"].as_str().unwrap()).unwrap();
    assert_eq!(d.order(), 2);
    assert_eq!(res["theta"]["0"], serde_json::json!(["0", "0"]));
}
