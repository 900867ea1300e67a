//! End-to-end tests that drive the compiled binary through files and pipes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tgk_core::{
    characteristic_from_json, characteristic_to_json, families, graph_to_json, is_equivalent,
    recover_characteristic, summarize, torus_from_json, torus_to_json, tree_from_json,
    EquivalenceMode, LatticeCovector,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tgk"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn write_doc(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("fixture write");
    path
}

fn standard_sphere() -> tgk_core::TorusGraph {
    families::six_sphere([
        LatticeCovector::std_basis(0),
        LatticeCovector::std_basis(1),
        LatticeCovector::std_basis(2),
    ])
    .expect("standard sphere is valid")
}

#[test]
fn validate_accepts_the_standard_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(dir.path(), "sphere.json", &torus_to_json(&standard_sphere()));
    let out = run(&["validate", "-i", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stderr_of(&out).contains("valid torus graph, 2 vertices"));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["valid"], serde_json::json!(true));
    assert_eq!(doc["vertices"], serde_json::json!(2));
}

#[test]
fn validate_rejects_broken_labels_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc: serde_json::Value =
        serde_json::from_str(&torus_to_json(&standard_sphere())).unwrap();
    // Doubling one label breaks the equal-or-opposite rule on its edge.
    doc["axial"]["0"] = serde_json::json!([2, 0, 0]);
    let path = write_doc(dir.path(), "broken.json", &doc.to_string());
    let out = run(&["validate", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let verdict: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(verdict["valid"], serde_json::json!(false));
    assert!(stderr_of(&out).contains("invalid:"));
}

#[test]
fn parse_failures_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = write_doc(dir.path(), "garbage.json", "{ not json");
    let out = run(&["validate", "-i", garbage.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("no-such-file.json");
    let out = run(&["validate", "-i", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_labels_a_graph_from_an_assignment() {
    let dir = tempfile::tempdir().unwrap();
    let reference = families::simplex();
    let graph = write_doc(dir.path(), "k4.json", &graph_to_json(reference.graph()));
    let lam = recover_characteristic(&reference).expect("simplex labels come from facets");
    let assignment = write_doc(dir.path(), "lam.json", &characteristic_to_json(&lam));
    let out = run(&["build", "-i", graph.to_str().unwrap(), "-i", assignment.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let built = torus_from_json(&stdout_of(&out)).unwrap();
    assert!(is_equivalent(&built, &reference, EquivalenceMode::Exact));
}

#[test]
fn classify_prints_the_tree_and_a_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(dir.path(), "figure.json", &torus_to_json(&families::figure_example()));
    let out = run(&["classify", "-i", path.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("QT×2 SB×1"));
    let tree = tree_from_json(&stdout_of(&out)).unwrap();
    assert_eq!(summarize(&tree), "QT×2 SB×1");
}

#[test]
fn sum_split_resum_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let left = write_doc(dir.path(), "left.json", &torus_to_json(&families::simplex()));
    let right = write_doc(dir.path(), "right.json", &torus_to_json(&families::simplex_conjugate()));

    let summed =
        run(&["sum", "-i", left.to_str().unwrap(), "-i", right.to_str().unwrap(), "--site", "0,0"]);
    assert!(summed.status.success(), "stderr: {}", stderr_of(&summed));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&summed)).unwrap();
    let graph_text = doc["graph"].to_string();
    let joints: Vec<u64> = doc["record"]["joint_edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    let sum_path = write_doc(dir.path(), "sum.json", &graph_text);

    let cut = format!("{},{},{}", joints[0], joints[1], joints[2]);
    let split_out = run(&["split", "-i", sum_path.to_str().unwrap(), "--cut", &cut]);
    assert!(split_out.status.success(), "stderr: {}", stderr_of(&split_out));
    let halves: serde_json::Value = serde_json::from_str(&stdout_of(&split_out)).unwrap();
    let left_half = write_doc(dir.path(), "half-left.json", &halves["left"].to_string());
    let right_half = write_doc(dir.path(), "half-right.json", &halves["right"].to_string());
    let left_cap = halves["record"]["left_cap"].as_u64().unwrap();
    let right_cap = halves["record"]["right_cap"].as_u64().unwrap();

    let resummed = run(&[
        "sum",
        "-i",
        left_half.to_str().unwrap(),
        "-i",
        right_half.to_str().unwrap(),
        "--site",
        &format!("{left_cap},{right_cap}"),
    ]);
    assert!(resummed.status.success(), "stderr: {}", stderr_of(&resummed));
    let redoc: serde_json::Value = serde_json::from_str(&stdout_of(&resummed)).unwrap();
    let original = torus_from_json(&graph_text).unwrap();
    let rebuilt = torus_from_json(&redoc["graph"].to_string()).unwrap();
    assert!(is_equivalent(&rebuilt, &original, EquivalenceMode::Exact));
}

#[test]
fn iso_reports_witness_maps_and_distinguishes_families() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_doc(dir.path(), "a.json", &torus_to_json(&families::simplex()));
    let same = run(&["iso", "-i", a.to_str().unwrap(), "-i", a.to_str().unwrap()]);
    assert!(same.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&same)).unwrap();
    assert_eq!(doc["equivalent"], serde_json::json!(true));
    assert_eq!(doc["vertex_map"].as_array().unwrap().len(), 4);

    let bundle = families::sphere_bundle(1, &0.into(), &0.into());
    let b = write_doc(dir.path(), "b.json", &torus_to_json(&bundle));
    let diff =
        run(&["iso", "-i", a.to_str().unwrap(), "-i", b.to_str().unwrap(), "--dedup", "lifts"]);
    assert!(diff.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&diff)).unwrap();
    assert_eq!(doc["equivalent"], serde_json::json!(false));
    assert_eq!(doc["vertex_map"], serde_json::Value::Null);
}

#[test]
fn enumerate_shards_partition_the_stream() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write_doc(dir.path(), "theta.json", &graph_to_json(&families::theta_graph()));
    let full = run(&["enumerate", "-i", theta.to_str().unwrap(), "--bound", "1"]);
    assert!(full.status.success());
    let all: Vec<String> = stdout_of(&full).lines().map(str::to_owned).collect();
    assert!(!all.is_empty());
    for line in &all {
        characteristic_from_json(line).expect("every streamed line parses");
    }

    let mut shards: Vec<Vec<String>> = Vec::new();
    for i in 0..3 {
        let out = run(&[
            "enumerate",
            "-i",
            theta.to_str().unwrap(),
            "--bound",
            "1",
            "--shards",
            "3",
            "--shard",
            &i.to_string(),
        ]);
        assert!(out.status.success());
        shards.push(stdout_of(&out).lines().map(str::to_owned).collect());
    }
    assert_eq!(shards.iter().map(Vec::len).sum::<usize>(), all.len());
    // Round-robin by stream position, so reruns always land in the same shard.
    for (i, line) in all.iter().enumerate() {
        assert_eq!(&shards[i % 3][i / 3], line);
    }
}

#[test]
fn enumerate_dedup_collapses_equivalent_assignments() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write_doc(dir.path(), "theta.json", &graph_to_json(&families::theta_graph()));
    // One thin shard keeps the pairwise-equivalence workload small.
    let base = &[
        "enumerate",
        "-i",
        theta.to_str().unwrap(),
        "--bound",
        "1",
        "--shards",
        "100",
        "--shard",
        "0",
    ];
    let plain = run(base);
    assert!(plain.status.success());
    let mut with_dedup = base.to_vec();
    with_dedup.extend(["--dedup", "lifts"]);
    let deduped = run(&with_dedup);
    assert!(deduped.status.success());
    let plain_count = stdout_of(&plain).lines().count();
    let deduped_count = stdout_of(&deduped).lines().count();
    assert!(0 < deduped_count && deduped_count < plain_count);
}

#[test]
fn dot_output_serves_graph_verbs_only() {
    let dir = tempfile::tempdir().unwrap();
    let reference = families::simplex();
    let graph = write_doc(dir.path(), "k4.json", &graph_to_json(reference.graph()));
    let lam = recover_characteristic(&reference).unwrap();
    let assignment = write_doc(dir.path(), "lam.json", &characteristic_to_json(&lam));
    let out = run(&[
        "build",
        "-i",
        graph.to_str().unwrap(),
        "-i",
        assignment.to_str().unwrap(),
        "--format",
        "dot",
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).starts_with("digraph"));

    // Verbs whose output is not a graph reject the flag outright.
    let torus = write_doc(dir.path(), "t.json", &torus_to_json(&reference));
    let rejected = run(&["classify", "-i", torus.to_str().unwrap(), "--format", "dot"]);
    assert_eq!(rejected.status.code(), Some(2));
}
