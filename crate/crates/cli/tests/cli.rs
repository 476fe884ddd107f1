//! End-to-end tests of the `sbmk` binary: argument handling, file IO,
//! output schemas, exit codes, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn sbmk() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sbmk"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = sbmk().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "sbmk {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn small_graph(dir: &tempfile::TempDir) -> PathBuf {
    let path = dir.path().join("g.txt");
    std::fs::write(&path, "a b\nb c\nc a\nd e\ne f\nf d\na d\n").unwrap();
    path
}

#[test]
fn estimate_outputs_versioned_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = small_graph(&dir);
    let out = run_ok(&[
        "estimate",
        path.to_str().unwrap(),
        "--sweeps",
        "300",
        "--burnin",
        "100",
        "--runs",
        "2",
        "--kmax",
        "4",
        "--marginals",
    ]);
    let v = json_stdout(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["graph"]["n"], 6);
    assert_eq!(v["graph"]["m"], 7);
    assert_eq!(v["config"]["k_max"], 4);
    assert_eq!(v["config"]["k_shrink"], "top-empty");
    assert_eq!(v["runs"].as_array().unwrap().len(), 2);
    let hist = v["k_histogram"].as_object().unwrap();
    let total: f64 = hist.values().map(|p| p.as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-9);
    let map_k = v["map_k"].as_u64().unwrap();
    assert!((1..=4).contains(&map_k));
    let marg = &v["marginals"];
    assert_eq!(marg["k"], v["map_k"]);
    assert_eq!(marg["nodes"].as_array().unwrap().len(), 6);
    assert_eq!(marg["consensus"].as_array().unwrap().len(), 6);
    for row in marg["rows"].as_array().unwrap() {
        let s: f64 = row
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p.as_f64().unwrap())
            .sum();
        assert!((s - 1.0).abs() < 1e-9);
    }
}

#[test]
fn estimate_is_deterministic_given_seed() {
    let dir = tempfile::tempdir().unwrap();
    let path = small_graph(&dir);
    let args = [
        "estimate",
        path.to_str().unwrap(),
        "--sweeps",
        "200",
        "--burnin",
        "50",
        "--runs",
        "2",
        "--kmax",
        "4",
        "--seed",
        "11",
    ];
    let a = run_ok(&args);
    let b = run_ok(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn estimate_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = small_graph(&dir);
    let out_path = dir.path().join("result.json");
    run_ok(&[
        "estimate",
        path.to_str().unwrap(),
        "--sweeps",
        "100",
        "--burnin",
        "20",
        "--runs",
        "1",
        "--kmax",
        "3",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["command"], "estimate");
}

#[test]
fn estimate_k_shrink_rules_differ() {
    let dir = tempfile::tempdir().unwrap();
    let path = small_graph(&dir);
    let mut histograms = Vec::new();
    for rule in ["top-empty", "any-empty"] {
        let out = run_ok(&[
            "estimate",
            path.to_str().unwrap(),
            "--sweeps",
            "20000",
            "--burnin",
            "1000",
            "--runs",
            "1",
            "--kmax",
            "3",
            "--k-shrink",
            rule,
        ]);
        let v = json_stdout(&out);
        assert_eq!(v["config"]["k_shrink"], rule);
        histograms.push(v["k_histogram"]["1"].as_f64().unwrap_or(0.0));
    }
    // the relabeling rule shifts mass toward k=1
    assert!(histograms[1] > histograms[0]);
}

#[test]
fn generate_round_trips_through_estimate() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("sbm.txt");
    let out = run_ok(&[
        "generate",
        "--k",
        "2",
        "--group-size",
        "30",
        "--c-in",
        "16",
        "--c-out",
        "2",
        "--seed",
        "3",
        "--output",
        graph_path.to_str().unwrap(),
    ]);
    let v = json_stdout(&out);
    assert_eq!(v["n"], 60);
    assert!(graph_path.exists());
    let planted = std::fs::read_to_string(dir.path().join("sbm.txt.planted")).unwrap();
    assert_eq!(planted.lines().count(), 60);

    let est = run_ok(&[
        "estimate",
        graph_path.to_str().unwrap(),
        "--sweeps",
        "200",
        "--burnin",
        "100",
        "--runs",
        "1",
        "--kmax",
        "6",
    ]);
    let ev = json_stdout(&est);
    assert_eq!(ev["graph"]["n"], 60);
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for path in [&a, &b] {
        run_ok(&[
            "generate",
            "--k",
            "3",
            "--group-size",
            "10",
            "--c-in",
            "8",
            "--c-out",
            "1",
            "--seed",
            "9",
            "--output",
            path.to_str().unwrap(),
        ]);
    }
    assert_eq!(
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap()
    );
}

#[test]
fn oracle_matches_estimate_on_tiny_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tiny.txt");
    std::fs::write(&path, "a b\nb c\nc a\nd e\n").unwrap();
    let out = run_ok(&["oracle", path.to_str().unwrap(), "--kmax", "3"]);
    let v = json_stdout(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["k_max"], 3);
    let posterior = v["posterior"].as_object().unwrap();
    assert_eq!(posterior.len(), 3);
    let total: f64 = posterior.values().map(|p| p.as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-9);

    let est = run_ok(&[
        "estimate",
        path.to_str().unwrap(),
        "--sweeps",
        "40000",
        "--burnin",
        "2000",
        "--runs",
        "1",
        "--kmax",
        "3",
    ]);
    let ev = json_stdout(&est);
    for k in ["1", "2", "3"] {
        let exact = posterior[k].as_f64().unwrap();
        let sampled = ev["k_histogram"][k].as_f64().unwrap_or(0.0);
        assert!(
            (exact - sampled).abs() < 0.03,
            "k={k}: exact {exact} vs sampled {sampled}"
        );
    }
}

#[test]
fn oracle_refuses_large_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let edges: String = (0..40).map(|i| format!("{i} {}\n", (i + 1) % 40)).collect();
    let path = dir.path().join("big.txt");
    std::fs::write(&path, edges).unwrap();
    let out = sbmk()
        .args(["oracle", path.to_str().unwrap(), "--kmax", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("enumeration"));
}

#[test]
fn benchmark_recovery_emits_csv() {
    let out = run_ok(&[
        "benchmark-recovery",
        "--k-values",
        "2",
        "--networks",
        "1",
        "--group-size",
        "12",
        "--in-degree",
        "6",
        "--out-degree",
        "2",
        "--sweeps",
        "100",
        "--burnin",
        "50",
        "--runs",
        "1",
        "--kmax",
        "4",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema_version: 1"));
    assert_eq!(lines.next(), Some("true_k,network,k,probability"));
    let data: Vec<&str> = lines.collect();
    assert!(!data.is_empty());
    let total: f64 = data
        .iter()
        .map(|l| l.split(',').nth(3).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-3);
}

#[test]
fn benchmark_detectability_emits_csv() {
    let out = run_ok(&[
        "benchmark-detectability",
        "--deltas",
        "8",
        "--networks",
        "2",
        "--k",
        "2",
        "--group-size",
        "12",
        "--mean-degree",
        "6",
        "--sweeps",
        "100",
        "--burnin",
        "50",
        "--runs",
        "1",
        "--kmax",
        "4",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema_version: 1"));
    assert_eq!(
        lines.next(),
        Some("delta,networks,successes,success_fraction,threshold")
    );
    let row = lines.next().expect("one data row");
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "8");
    assert_eq!(fields[1], "2");
    let successes: u64 = fields[2].parse().unwrap();
    assert!(successes <= 2);
}

#[test]
fn gml_input_is_detected_by_extension() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.gml");
    std::fs::write(
        &path,
        "graph [\n  node [ id 0 ]\n  node [ id 1 ]\n  node [ id 2 ]\n  edge [ source 0 target 1 ]\n  edge [ source 1 target 2 ]\n]\n",
    )
    .unwrap();
    let out = run_ok(&[
        "estimate",
        path.to_str().unwrap(),
        "--sweeps",
        "50",
        "--burnin",
        "10",
        "--runs",
        "1",
        "--kmax",
        "2",
    ]);
    let v = json_stdout(&out);
    assert_eq!(v["graph"]["n"], 3);
    assert_eq!(v["graph"]["m"], 2);
}

#[test]
fn missing_input_exits_two() {
    let out = sbmk()
        .args(["estimate", "/nonexistent/graph.txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}

#[test]
fn malformed_edge_list_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "a b\nonly-one-token\n").unwrap();
    let out = sbmk()
        .args(["estimate", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_exits_two() {
    let out = sbmk()
        .args(["estimate", "g.txt", "--no-such-flag"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
