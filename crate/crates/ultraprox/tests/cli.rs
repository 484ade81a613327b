//! End-to-end tests of the command-line interface: exit codes, output
//! determinism, and spec-file round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

use ultraprox::spaces::Space;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ultraprox"))
        .args(args)
        .output()
        .expect("spawn the CLI")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn validate_valid_space_exits_zero() {
    let out = run(&["validate", "--space", &fixture("ex1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["valid"], serde_json::json!(true));
}

#[test]
fn validate_invalid_space_exits_one() {
    let dir = std::env::temp_dir().join("ultraprox_cli_invalid");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_space.json");
    // d(a,c) > max(d(a,b), d(b,c)) breaks the strong triangle inequality
    std::fs::write(
        &path,
        r#"{"type":"finite","points":["a","b","c"],
            "distances":[["a","b","1/4"],["b","c","1/4"],["a","c","1"]]}"#,
    )
    .unwrap();
    let out = run(&["validate", "--space", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["valid"], serde_json::json!(false));
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_spec_exits_two() {
    let dir = std::env::temp_dir().join("ultraprox_cli_malformed");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["validate", "--space", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("space spec"));
}

#[test]
fn missing_file_and_unknown_flag_exit_two() {
    let out = run(&["validate", "--space", "/nonexistent/space.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["validate", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn analyze_reports_proximity_values() {
    let out = run(&[
        "analyze",
        "--space", &fixture("ex1.json"),
        "--A", &fixture("ex1_A.json"),
        "--B", &fixture("ex1_B.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dist_AB"], serde_json::json!("1/2"));
    assert_eq!(v["A0"], serde_json::json!(["a", "c"]));
    assert_eq!(v["B0"], serde_json::json!(["b", "d"]));
}

#[test]
fn check_verdicts_drive_exit_codes() {
    // lemma inapplicable on the 4-point example: no conclusion failure
    let out = run(&[
        "check", "--theorem", "lemma1",
        "--space", &fixture("ex1.json"),
        "--A", &fixture("ex1_A.json"),
        "--B", &fixture("ex1_B.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));

    // trichotomy verified on the 3-adic instance
    let out = run(&[
        "check", "--theorem", "thm1",
        "--space", &fixture("padic.json"),
        "--A", &fixture("padic_A.json"),
        "--B", &fixture("padic_B.json"),
        "--map", &fixture("padic_map.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case_label"], serde_json::json!("(iii)"));

    // map required but missing: usage error
    let out = run(&[
        "check", "--theorem", "thm1",
        "--space", &fixture("ex1.json"),
        "--A", &fixture("ex1_A.json"),
        "--B", &fixture("ex1_B.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // unknown theorem id: usage error
    let out = run(&[
        "check", "--theorem", "thm9",
        "--space", &fixture("ex1.json"),
        "--A", &fixture("ex1_A.json"),
        "--B", &fixture("ex1_B.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_finds_certified_fixed_point() {
    let out = run(&[
        "solve",
        "--space", &fixture("baire.json"),
        "--map", &fixture("baire_map.json"),
        "--start", r#"{"prefix":[],"tail":7}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outcome"], serde_json::json!("fixed_point"));
    assert_eq!(v["point"], serde_json::json!("(7,7,0,0,...)"));
}

#[test]
fn replicate_seq2_exits_one_all_examples_exit_one() {
    // the second sequence example carries a pinned discrepancy
    let out = run(&["replicate", "--example", "seq2"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["clean"], serde_json::json!(false));

    // every other example replicates cleanly
    for example in ["ex1", "baire", "padic", "nat"] {
        let out = run(&["replicate", "--example", example]);
        assert_eq!(out.status.code(), Some(0), "example {example}");
    }

    // unknown example name is a usage error
    let out = run(&["replicate", "--example", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_argv_and_seed_give_byte_identical_json() {
    let args: Vec<Vec<&str>> = vec![
        vec!["analyze", "--space", "SPACE", "--A", "A", "--B", "B"],
        vec!["fuzz", "--trials", "40", "--max-points", "8", "--seed", "11"],
        vec!["replicate", "--example", "padic"],
        vec![
            "classify", "--space", "SPACE", "--map", "MAP", "--A", "A", "--B", "B",
        ],
    ];
    let space = fixture("two_cluster.json");
    let a = fixture("two_cluster_A.json");
    let b = fixture("two_cluster_B.json");
    let map = fixture("two_cluster_collapse.json");
    for argv in args {
        let argv: Vec<&str> = argv
            .iter()
            .map(|s| match *s {
                "SPACE" => space.as_str(),
                "A" => a.as_str(),
                "B" => b.as_str(),
                "MAP" => map.as_str(),
                other => other,
            })
            .collect();
        let first = run(&argv);
        let second = run(&argv);
        assert_eq!(first.stdout, second.stdout, "non-deterministic output for {argv:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn different_seeds_accepted_and_deterministic_per_seed() {
    let run_seed = |seed: &str| {
        run(&["fuzz", "--trials", "25", "--max-points", "6", "--seed", seed])
    };
    let a1 = run_seed("3");
    let a2 = run_seed("3");
    assert_eq!(a1.stdout, a2.stdout);
    assert_eq!(a1.status.code(), Some(0));
}

#[test]
fn emitted_space_specs_round_trip() {
    for name in ["ex1.json", "two_cluster.json", "padic.json", "baire.json", "nat.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let sp = Space::from_json(&text).unwrap();
        let emitted = sp.to_spec_json().to_string();
        assert_eq!(Space::from_json(&emitted).unwrap(), sp, "round trip for {name}");
    }
}

#[test]
fn fuzz_drop_hypothesis_records_frequencies() {
    let out = run(&[
        "fuzz", "--trials", "150", "--max-points", "10", "--seed", "7",
        "--theorem", "thm1", "--drop-hypothesis", "delta_B_le_dist",
    ]);
    // drop mode records outcome frequencies; it never fails the run
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let freq = v["outcome_freq"].as_object().unwrap();
    assert!(freq.contains_key("conclusion_failed"), "outcomes: {freq:?}");

    // an unsupported hypothesis name is a usage error
    let out = run(&[
        "fuzz", "--trials", "1", "--drop-hypothesis", "nonexpansive",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_output_mode_renders_summaries() {
    let out = run(&[
        "analyze",
        "--space", &fixture("ex1.json"),
        "--A", &fixture("ex1_A.json"),
        "--B", &fixture("ex1_B.json"),
        "--output", "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dist(A,B) = 1/2"));
    assert!(text.contains("A0 = {a, c}"));
}
