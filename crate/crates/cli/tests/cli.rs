//! End-to-end tests of the binary: pipelines, determinism, exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dwenc"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dwenc-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn gen_encode_solve_pipeline() {
    let dir = tempdir("pipeline");
    let out = run_in(
        &dir,
        &[
            "gen-instance",
            "three-color",
            "--size",
            "4",
            "--seed",
            "9",
            "-o",
            "inst.json",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let inst = std::fs::read_to_string(dir.join("inst.json")).unwrap();
    assert!(inst.contains("\"type\":\"coloring\""));

    let out = run_in(
        &dir,
        &[
            "encode",
            "inst.json",
            "--encoding",
            "dw",
            "-o",
            "model.json",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let model: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("model.json")).unwrap()).unwrap();
    assert_eq!(model["n"], serde_json::json!(8)); // 4 vertices × 2 chain qubits
    assert_eq!(model["variables"].as_array().unwrap().len(), 4);

    let out = run_in(&dir, &["solve-exact", "model.json"]);
    assert!(out.status.success(), "{out:?}");
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert!(report["degeneracy"].as_u64().unwrap() >= 1);
    assert_eq!(
        report["states"].as_array().unwrap().len(),
        report["values"].as_array().unwrap().len()
    );
}

#[test]
fn scheduling_instance_roundtrip() {
    let dir = tempdir("sched");
    let out = run_in(
        &dir,
        &[
            "gen-instance",
            "scheduling",
            "--size",
            "3",
            "--seed",
            "5",
            "-o",
            "sched.json",
        ],
    );
    assert!(out.status.success());
    let inst = std::fs::read_to_string(dir.join("sched.json")).unwrap();
    assert!(inst.contains("\"type\":\"scheduling\""));
    let out = run_in(
        &dir,
        &[
            "encode",
            "sched.json",
            "--encoding",
            "onehot",
            "-o",
            "m.json",
        ],
    );
    assert!(out.status.success(), "{out:?}");
}

#[test]
fn hwgraph_counts() {
    let dir = tempdir("hwgraph");
    let out = run_in(&dir, &["hwgraph", "chimera", "--L", "2", "-o", "c2.json"]);
    assert!(out.status.success());
    let graph: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("c2.json")).unwrap()).unwrap();
    assert_eq!(graph["n"], serde_json::json!(32));
    assert_eq!(graph["edges"].as_array().unwrap().len(), 80);

    let out = run_in(&dir, &["hwgraph", "pegasus", "--L", "2", "-o", "p2.json"]);
    assert!(out.status.success());
    let graph: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("p2.json")).unwrap()).unwrap();
    assert_eq!(graph["n"], serde_json::json!(40));
}

#[test]
fn embed_identity_fast_path() {
    let dir = tempdir("embed");
    assert!(
        run_in(&dir, &["hwgraph", "chimera", "--L", "1", "-o", "c1.json"])
            .status
            .success()
    );
    let out = run_in(
        &dir,
        &[
            "embed", "c1.json", "c1.json", "--tries", "3", "--seed", "1", "-o", "e.json",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let emb: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("e.json")).unwrap()).unwrap();
    assert_eq!(emb["ratio"], serde_json::json!(1.0));
    assert_eq!(emb["chains"]["0"], serde_json::json!([0]));
    assert_eq!(emb["params"]["max_tries"], serde_json::json!(3));
}

#[test]
fn embed_failure_exits_nonzero() {
    let dir = tempdir("embedfail");
    assert!(
        run_in(&dir, &["hwgraph", "chimera", "--L", "1", "-o", "c1.json"])
            .status
            .success()
    );
    assert!(
        run_in(&dir, &["hwgraph", "chimera", "--L", "2", "-o", "c2.json"])
            .status
            .success()
    );
    // 32 logical vertices cannot fit into 8 hardware vertices.
    let out = run_in(
        &dir,
        &["embed", "c2.json", "c1.json", "--tries", "2", "--seed", "1"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no embedding"));
}

#[test]
fn experiment_csv_is_byte_deterministic() {
    let dir = tempdir("experiment");
    let args = [
        "experiment",
        "--family",
        "three-color",
        "--sizes",
        "4,5",
        "--instances",
        "1",
        "--encoding",
        "both",
        "--target",
        "chimera",
        "--seed",
        "12",
        "--tries",
        "4",
    ];
    let first = run_in(&dir, &args);
    assert!(first.status.success(), "{first:?}");
    let second = run_in(&dir, &args);
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8_lossy(&first.stdout);
    assert!(text.starts_with("problem_type,size_param,instance_index"));
    assert_eq!(text.lines().count(), 1 + 2 * 2);

    std::fs::write(dir.join("run.csv"), first.stdout).unwrap();
    let summary = run_in(&dir, &["summarize", "run.csv"]);
    assert!(summary.status.success());
    assert!(String::from_utf8_lossy(&summary.stdout)
        .starts_with("problem_type,size_param,encoding,target_family,count"));
}

#[test]
fn verify_mixer_reports_pass() {
    let dir = tempdir("verify");
    let out = run_in(&dir, &["verify", "mixer", "--m", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("verdict: PASS"));
    assert!(text.contains("0,-2,0"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempdir("usage");
    let out = run_in(&dir, &["encode", "nope.json", "--encoding", "ternary"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_in(&dir, &["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_files_exit_with_one() {
    let dir = tempdir("missing");
    let out = run_in(&dir, &["solve-exact", "absent.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}
