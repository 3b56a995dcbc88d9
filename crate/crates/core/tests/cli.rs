//! Drives the installed binary over its external interfaces: the point-set
//! file format, the JSON count schema, determinism and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_projholes"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("projholes-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn gen_writes_the_documented_format() {
    let text = stdout(&["gen", "perfect-horton", "--n", "16"]);
    let lines: Vec<&str> = text.lines().collect();
    let data: Vec<&str> = lines
        .iter()
        .copied()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .collect();
    assert_eq!(data[0], "16");
    assert_eq!(data.len(), 17);
    for point in &data[1..] {
        assert_eq!(point.split_whitespace().count(), 2);
    }
}

#[test]
fn gen_is_deterministic_per_seed() {
    let a = stdout(&[
        "gen", "random", "--n", "50", "--shape", "disk", "--seed", "7",
    ]);
    let b = stdout(&[
        "gen", "random", "--n", "50", "--shape", "disk", "--seed", "7",
    ]);
    assert_eq!(a, b);
    let c = stdout(&[
        "gen", "random", "--n", "50", "--shape", "disk", "--seed", "8",
    ]);
    assert_ne!(a, c);
}

#[test]
fn count_reports_the_schema_with_integer_counts() {
    let file = tmp("five.pts");
    let text = stdout(&["gen", "random", "--n", "5", "--seed", "3"]);
    std::fs::write(&file, text).unwrap();
    let json = stdout(&["count", "--in", file.to_str().unwrap(), "--what", "gons"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["mode"], "fast");
    assert_eq!(v["what"], "gons");
    assert_eq!(v["counts"]["3"]["gons_projective"], 40);
    assert_eq!(v["counts"]["4"]["gons_projective"], 15);
    assert_eq!(v["counts"]["5"]["gons_projective"], 1);
    assert!(v["counts"]["3"]["gons_projective"].is_u64());
    std::fs::remove_file(&file).ok();
}

#[test]
fn oracle_and_fast_agree_after_normalization() {
    let file = tmp("eight.pts");
    let text = stdout(&["gen", "perfect-horton", "--n", "8"]);
    std::fs::write(&file, text).unwrap();
    let f = file.to_str().unwrap();
    for what in ["gons", "holes", "islands"] {
        let fast = stdout(&["count", "--in", f, "--what", what, "--mode", "fast"]);
        let oracle = stdout(&["count", "--in", f, "--what", what, "--mode", "oracle"]);
        let mut fast: serde_json::Value = serde_json::from_str(&fast).unwrap();
        let mut oracle: serde_json::Value = serde_json::from_str(&oracle).unwrap();
        fast["mode"] = serde_json::Value::Null;
        oracle["mode"] = serde_json::Value::Null;
        assert_eq!(fast, oracle, "what={what}");
    }
    std::fs::remove_file(&file).ok();
}

#[test]
fn perfect_horton_eight_has_98_projective_3holes() {
    let file = tmp("ph8.pts");
    let text = stdout(&["gen", "perfect-horton", "--n", "8"]);
    std::fs::write(&file, text).unwrap();
    let json = stdout(&[
        "count",
        "--in",
        file.to_str().unwrap(),
        "--what",
        "holes",
        "--max-k",
        "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["counts"]["3"]["holes_projective"], 98);
    std::fs::remove_file(&file).ok();
}

#[test]
fn invalid_inputs_exit_with_code_one() {
    let out = run(&["count", "--in", "/nonexistent/path.pts"]);
    assert_eq!(out.status.code(), Some(1));

    let file = tmp("collinear.pts");
    std::fs::write(&file, "3\n0 0\n1 1\n2 2\n").unwrap();
    let out = run(&["count", "--in", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("collinear"), "stderr: {err}");
    std::fs::remove_file(&file).ok();

    let out = run(&["gen", "cluster", "--n", "10", "--a", "2", "--b", "9"]);
    assert_eq!(out.status.code(), Some(1));

    // The exhaustive counter refuses oversized inputs unless forced.
    let file = tmp("big.pts");
    let text = stdout(&["gen", "random", "--n", "21", "--seed", "1"]);
    std::fs::write(&file, text).unwrap();
    let out = run(&[
        "count",
        "--in",
        file.to_str().unwrap(),
        "--mode",
        "oracle",
        "--max-k",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&[
        "count",
        "--in",
        file.to_str().unwrap(),
        "--mode",
        "oracle",
        "--max-k",
        "3",
        "--force",
    ]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_file(&file).ok();
}

#[test]
fn verify_horton_passes_and_exits_zero() {
    let out = run(&["verify", "horton", "--z-max", "2", "--oracle-z-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("overall: PASS"));
}

#[test]
fn experiment_wedges_reports_and_exits_zero() {
    let out = run(&[
        "experiment",
        "wedges",
        "--n",
        "8",
        "--trials",
        "5",
        "--seed",
        "1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json report");
    assert_eq!(v["counts"].as_array().unwrap().len(), 5);
    assert_eq!(v["within_bound"], true);
}

#[test]
fn search_reports_failure_on_impossible_parameters() {
    // Five points always span a projective 5-gon; nine points always span a
    // projective 6-gon.
    for (n, k) in [("5", "5"), ("9", "6")] {
        let out = run(&["search", "--n", n, "--k", k, "--trials", "300", "--json"]);
        assert_eq!(out.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["found"], false, "n={n} k={k}");
        assert_eq!(v["best_largest_gon"].as_u64(), k.parse::<u64>().ok());
    }
}

#[test]
fn prop5_and_construction_exit_codes() {
    let file = tmp("p5.pts");
    let text = stdout(&["gen", "random", "--n", "9", "--seed", "4"]);
    std::fs::write(&file, text).unwrap();
    let out = run(&["prop5", "--in", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_file(&file).ok();

    let csv = tmp("construction.csv");
    let out = run(&[
        "construction",
        "--n",
        "49",
        "--a",
        "2",
        "--b",
        "3",
        "--k",
        "3",
        "--seed",
        "1",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("n,k,holes_affine"));
    assert!(csv_text.lines().count() >= 2);
    std::fs::remove_file(&csv).ok();
}

#[test]
fn cluster_gen_writes_annotation_sidecar() {
    let file = tmp("cluster.pts");
    let out = run(&[
        "gen",
        "cluster",
        "--n",
        "100",
        "--a",
        "2",
        "--b",
        "4",
        "--seed",
        "3",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut side = file.clone().into_os_string();
    side.push(".annotations.json");
    let ann: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&side).unwrap()).unwrap();
    assert_eq!(ann["a"], 2);
    assert_eq!(ann["clusters"].as_array().unwrap().len(), 2);
    assert_eq!(ann["clusters"][0].as_array().unwrap().len(), 4);
    std::fs::remove_file(&file).ok();
    std::fs::remove_file(std::path::Path::new(&side)).ok();
}

#[test]
fn double_chain_gen_has_nine_points_and_one_gon() {
    let file = tmp("dc.pts");
    let text = stdout(&[
        "gen",
        "double-chain",
        "--chain-a",
        "4",
        "--chain-b",
        "5",
        "--seed",
        "1",
    ]);
    std::fs::write(&file, &text).unwrap();
    let json = stdout(&["count", "--in", file.to_str().unwrap(), "--what", "gons"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["counts"]["9"]["gons_projective"], 1);
    std::fs::remove_file(&file).ok();
}
