use std::path::Path;
use std::process::{Command, Output};

fn dhg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dhg")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_prints_passing_report() {
    let out = dhg(&["analyze", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["incidence_nodes"], 21);
    assert_eq!(report["incidence_edges"], 43);
    assert_eq!(report["passed"], true);
    assert!(report.get("timings").is_none());
}

#[test]
fn analyze_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d4.json");
    let out = dhg(&["analyze", "--n", "4", "--json", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(report["hyperedge_count"], 4);
    assert_eq!(report["planar"]["computed"], true);
}

#[test]
fn sweep_single_and_ordered() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.jsonl");
    let out = dhg(&["sweep", "--from", "5", "--to", "5", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&file).unwrap().lines().count(), 1);

    let out = dhg(&["sweep", "--from", "2", "--to", "20", "--workers", "2", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let ns: Vec<u64> = std::fs::read_to_string(&file)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["n"].as_u64().unwrap())
        .collect();
    assert_eq!(ns, (2..=20).collect::<Vec<_>>());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dhg(&["sweep", "--from", "10", "--to", "2"]).status.code(), Some(2));
    assert_eq!(dhg(&["analyze", "--n", "1"]).status.code(), Some(2));
    assert_eq!(dhg(&["analyze"]).status.code(), Some(2));
    assert_eq!(dhg(&["export", "--n", "4", "--format", "svg", "--target", "hypergraph", "--out", "x"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_fails_before_work() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("missing").join("s.jsonl");
    let out = dhg(&["sweep", "--from", "2", "--to", "200", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn size_guard_is_configurable() {
    let out = Command::new(env!("CARGO_BIN_EXE_dhg"))
        .args(["analyze", "--n", "30"])
        .env("DHG_MAX_N", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DHG_MAX_N"));
}

#[test]
fn exports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for (format, target) in [("dot", "incidence"), ("json", "hypergraph"), ("json", "linegraph"), ("dot", "hosttree")] {
        let a = dir.path().join("a");
        let b = dir.path().join("b");
        let n = if target == "hosttree" { "4" } else { "12" };
        for p in [&a, &b] {
            let out = dhg(&["export", "--n", n, "--format", format, "--target", target, "--out", path(p)]);
            assert_eq!(out.status.code(), Some(0), "{format} {target}");
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}

#[test]
fn host_tree_export_refused_for_non_hypertree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dhg(&["export", "--n", "6", "--format", "dot", "--target", "hosttree", "--out", path(&dir.path().join("t.dot"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hosttree"));
}

#[test]
fn subgroups_lists_catalog() {
    let out = dhg(&["subgroups", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("<a^2, ab>"));
}
