use std::process::{Command, Output};

use metric_geom::{CoordSpace, MetricSpace, Point};
use metric_geom::spaces::validate_finite_metric;
use serde_json::Value;

fn mgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgeo")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

const EXAMPLE_ONE: &str = r#"{"M": [[0,0],[-1,-1],[-1,1]], "W": [[0,0],[1,1],[1,-1]]}"#;
const EXAMPLE_ONE_NETS: &str = r#"{"S": [[0,0],[-1,-1],[-1,1]], "T": [[0,0],[1,1],[1,-1]]}"#;

#[test]
fn hausdorff_of_the_three_point_nets() {
    let out = mgeo(&["compute", "hausdorff", "--input", EXAMPLE_ONE]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!((v["result"]["value"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["pass"], true);
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn midpoint_set_self_checks_pass() {
    let out = mgeo(&["compute", "midpoint_set", "--input", EXAMPLE_ONE]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["points"].as_array().unwrap().len(), 5);
}

#[test]
fn best_ball_of_a_segment_has_quarter_radius() {
    let input = r#"{"body": {"kind": "segment", "x": [0, 0], "y": [3, 4]}}"#;
    let out = mgeo(&["compute", "best_ball", "--input", input]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out)["result"]["radius"].as_f64().unwrap();
    assert!((r - 1.25).abs() < 1e-8, "radius {r}");
}

#[test]
fn input_from_file_matches_inline() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.json");
    std::fs::write(&path, EXAMPLE_ONE_NETS).unwrap();
    let a = mgeo(&["compute", "alpha_p", "--input", path.to_str().unwrap()]);
    let b = mgeo(&["compute", "alpha_p", "--input", EXAMPLE_ONE_NETS]);
    assert_eq!(without_timing(json_of(&a)), without_timing(json_of(&b)));
    assert!((json_of(&a)["result"]["cost"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn all_suites_pass_with_default_seed() {
    let out = mgeo(&["suite", "all", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert_eq!(v["result"]["failed"], 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn suite_output_is_deterministic() {
    let a = without_timing(json_of(&mgeo(&["suite", "nnet", "--seed", "7"])));
    let b = without_timing(json_of(&mgeo(&["suite", "nnet", "--seed", "7"])));
    assert_eq!(a, b);
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(mgeo(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(mgeo(&["--space", "hyperbolic", "suite", "spaces"]).status.code(), Some(2));
    assert_eq!(mgeo(&["generate", "uniform_points", "--n", "0"]).status.code(), Some(2));
    assert_eq!(mgeo(&["compute", "hausdorff", "--input", r#"{"M": []}"#]).status.code(), Some(2));
    let outside = r#"{"M": [[2, 0]], "W": [[0, 0]]}"#;
    assert_eq!(mgeo(&["--space", "klein:2", "compute", "hausdorff", "--input", outside]).status.code(), Some(2));
}

#[test]
fn generate_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (dir.path().join("a.json"), dir.path().join("b.json"), dir.path().join("c.json"));
    for (path, seed) in [(&a, "5"), (&b, "5"), (&c, "6")] {
        let out = mgeo(&["--space", "klein:3", "--seed", seed, "--out", path.to_str().unwrap(), "generate", "clustered"]);
        assert_eq!(out.status.code(), Some(0));
    }
    let read = |p: &std::path::Path| std::fs::read(p).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_ne!(read(&a), read(&c));
}

#[test]
fn generated_points_form_a_metric() {
    let out = mgeo(&["--space", "klein:2:2:0.5", "generate", "uniform_points", "--n", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let pts: Vec<Point> = serde_json::from_value(v["data"]["M"].clone()).unwrap();
    let space = CoordSpace::klein(2, 2.0, 0.5).unwrap();
    let d: Vec<Vec<f64>> = pts.iter().map(|x| pts.iter().map(|y| space.dist(x, y)).collect()).collect();
    assert!(validate_finite_metric(&d).is_ok());
}

#[test]
fn generated_instance_feeds_compute() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("pair.json");
    let out = mgeo(&["--out", inst.to_str().unwrap(), "generate", "nnet_pair", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&std::fs::read(&inst).unwrap()).unwrap();
    let data = serde_json::to_string(&v["data"]).unwrap();
    let out = mgeo(&["compute", "alpha_pr", "--input", &data]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out)["result"].clone();
    assert!(r["lower"].as_f64().unwrap() <= r["upper"].as_f64().unwrap() + 1e-12);
}

#[test]
fn csv_report_has_one_row_per_check() {
    let out = mgeo(&["--format", "csv", "suite", "hausdorff"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rd = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rd.headers().unwrap(), vec!["command", "name", "lhs", "rhs", "slack", "pass"]);
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| &r[5] == "true"));
}
