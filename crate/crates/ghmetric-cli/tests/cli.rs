//! End-to-end checks of the installed binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ghmetric"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn gh_pair_example_reports_value_one() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "pair1.json",
        r#"{"name":"pair1","points":["a","b"],"dist":[[0,1],[1,0]]}"#,
    );
    write(
        dir.path(),
        "pair3.json",
        r#"{"name":"pair3","points":["p","q"],"dist":[[0,3],[3,0]]}"#,
    );
    let report = stdout_json(&run_in(dir.path(), &["gh", "pair1.json", "pair3.json", "--solver", "brute"]));
    assert_eq!(report["value"], "1");
    assert_eq!(report["witness"]["pairs"], serde_json::json!([[0, 0], [1, 1]]));
    assert_eq!(report["nodes"], 7);
}

#[test]
fn realize_emits_glued_space_with_half_hausdorff() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "point.json",
        r#"{"name":"point","points":["o"],"dist":[[0]]}"#,
    );
    write(
        dir.path(),
        "pair1.json",
        r#"{"name":"pair1","points":["a","b"],"dist":[[0,1],[1,0]]}"#,
    );
    let report = stdout_json(&run_in(
        dir.path(),
        &["realize", "point.json", "pair1.json", "--emit-glued", "g.json"],
    ));
    assert_eq!(report["value"], "1/2");

    let validate = stdout_json(&run_in(dir.path(), &["validate", "g.json"]));
    assert_eq!(validate["witness"]["points"], 3);

    let h = stdout_json(&run_in(
        dir.path(),
        &["hausdorff", "g.json", "--a", "0", "--b", "1,2"],
    ));
    assert_eq!(h["value"], "1/2");
}

#[test]
fn validate_reports_triangle_violation_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "broken.json",
        r#"{"name":"broken","points":["a","b","c"],"dist":[[0,1,3],[1,0,1],[3,1,0]]}"#,
    );
    let out = run_in(dir.path(), &["validate", "broken.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "triangle-violation");
    assert!(err["error"]["message"].as_str().unwrap().contains("d(0,2)"));
}

#[test]
fn size_limit_and_cauchy_violation_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["gen", "path", "n=6", "-o", "six.json"]);
    assert!(out.status.success());
    let out = run_in(dir.path(), &["gh", "six.json", "six.json", "--solver", "brute"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run_in(dir.path(), &["gen", "path", "n=2", "-o", "a.json"]);
    assert!(out.status.success());
    write(
        dir.path(),
        "far.json",
        r#"{"name":"far","points":["p","q"],"dist":[[0,3],[3,0]]}"#,
    );
    let out = run_in(
        dir.path(),
        &["tower", "a.json", "a.json", "far.json", "--limit"],
    );
    assert_eq!(out.status.code(), Some(4));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "cauchy-bound-violated");
}

#[test]
fn gen_is_byte_stable_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 2] = [
        &["gen", "graph-shortest-path", "nodes=5", "--seed", "42"],
        &["gen", "sup-norm-points", "count=4", "dim=2", "--seed", "7"],
    ];
    for args in cases {
        let a = run_in(dir.path(), args);
        let b = run_in(dir.path(), args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn threads_flag_and_env_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "pair1.json",
        r#"{"name":"pair1","points":["a","b"],"dist":[[0,1],[1,0]]}"#,
    );
    let report = stdout_json(&run_in(
        dir.path(),
        &["--threads", "1", "gh", "pair1.json", "pair1.json"],
    ));
    assert_eq!(report["value"], "0");

    let out = bin()
        .current_dir(dir.path())
        .env("GH_METRIC_THREADS", "2")
        .args(["gh", "pair1.json", "pair1.json"])
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["value"], "0");
}

#[test]
fn tower_reports_steps_and_limit() {
    let dir = tempfile::tempdir().unwrap();
    for level in 0..3 {
        let out = run_in(
            dir.path(),
            &[
                "gen",
                "dyadic-net",
                &format!("n={level}"),
                "-o",
                &format!("net{level}.json"),
            ],
        );
        assert!(out.status.success());
    }
    let report = stdout_json(&run_in(
        dir.path(),
        &["tower", "net0.json", "net1.json", "net2.json", "--limit"],
    ));
    assert_eq!(report["witness"]["steps"], serde_json::json!(["1/4", "1/8"]));
    assert_eq!(
        report["witness"]["consecutive_hausdorff"],
        serde_json::json!(["1/4", "1/8"])
    );
    assert_eq!(report["witness"]["limit"]["error_bound"], "1/2");
}
