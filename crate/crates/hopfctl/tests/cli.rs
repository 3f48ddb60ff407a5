use std::process::{Command, Output};

use serde_json::Value;

fn hopfctl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfctl")).args(args).env_remove("HOPFCTL_SEED").output().expect("spawn hopfctl")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_algebra_passes() {
    let o = hopfctl(&["verify", "--suite", "algebra", "--seed", "7", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["seed"], 7);
    assert!(v.get("timestamp_unix_s").is_none());
    let checks = v["reports"][0]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["anchor"].as_str().is_some_and(|s| !s.is_empty())));
}

#[test]
fn verify_is_deterministic_without_timestamp() {
    let a = hopfctl(&["verify", "--suite", "algebra", "--seed", "3", "--no-timestamp"]);
    let b = hopfctl(&["verify", "--suite", "algebra", "--seed", "3", "--no-timestamp"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_seed_falls_back_to_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_hopfctl"))
        .args(["verify", "--suite", "algebra", "--no-timestamp"])
        .env("HOPFCTL_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json(&o)["seed"], 11);
}

#[test]
fn verify_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = hopfctl(&["verify", "--suite", "algebra", "--no-timestamp", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["suite"], "algebra");
}

#[test]
fn unknown_suite_is_usage_error() {
    let o = hopfctl(&["verify", "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_gamma_fixture_fails() {
    let o = hopfctl(&["verify", "--suite", "gamma", "--corrupt-fixture", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["status"], "fail");
    let failing: Vec<&str> =
        v["reports"][0]["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").map(|c| c["id"].as_str().unwrap()).collect();
    assert!(failing.contains(&"so32_I.anticommutator"), "{failing:?}");
}

#[test]
fn tight_tolerance_override_fails_suite() {
    let o = hopfctl(&["verify", "--suite", "hopf", "--tolerance", "hopf.=1e-300", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(1));
    let bad = hopfctl(&["verify", "--suite", "hopf", "--tolerance", "nope"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn project_pole() {
    let o = hopfctl(&["project", "--level", "1", "--realization", "I", "--spinor", "[[1,0],[0,0]]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let x: Vec<f64> = serde_json::from_value(json(&o)["x"].clone()).unwrap();
    assert_eq!(x, vec![0.0, 0.0, 1.0]);
}

#[test]
fn project_level0() {
    let o = hopfctl(&["project", "--level", "0", "--realization", "I", "--spinor", "[0.5, 2]"]);
    assert_eq!(json(&o)["x"], serde_json::json!([2.0, 4.25]));
}

#[test]
fn malformed_json_names_field_path() {
    let o = hopfctl(&["project", "--level", "1", "--realization", "I", "--spinor", "[[1,0],[0,\"x\"]]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("[1][1]"), "{}", stderr(&o));
}

#[test]
fn domain_error_exits_one() {
    let o = hopfctl(&["invert", "--level", "1", "--realization", "I", "--patch", "upper", "--point", "[0,0,2]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("hyperboloid"));
    let u = hopfctl(&["project", "--level", "2", "--realization", "I", "--spinor", "[[0,0],[0,0],[0,0],[0,0]]"]);
    assert_eq!(u.status.code(), Some(1));
}

#[test]
fn invert_then_project_round_trips() {
    let x = [0.6, 0.0, 0.8];
    let pt = serde_json::to_string(&x).unwrap();
    let o = hopfctl(&["invert", "--level", "1", "--realization", "I", "--patch", "upper", "--point", &pt]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let spinor = serde_json::to_string(&json(&o)["spinor"]).unwrap();
    let p = hopfctl(&["project", "--level", "1", "--realization", "I", "--spinor", &spinor]);
    let y: Vec<f64> = serde_json::from_value(json(&p)["x"].clone()).unwrap();
    for (a, b) in x.iter().zip(&y) {
        assert!((a - b).abs() < 1e-12, "{x:?} vs {y:?}");
    }
}

#[test]
fn octonion_table_is_8_by_8() {
    let o = hopfctl(&["tables", "--algebra", "split-octonion"]);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["basis"].as_array().unwrap().len(), 8);
    let t = v["table"].as_array().unwrap();
    assert_eq!(t.len(), 8);
    assert!(t.iter().all(|r| r.as_array().unwrap().len() == 8));
    assert_eq!(t[0][0], serde_json::json!({"coeff": 1, "basis_index": 0}));
}

#[test]
fn sample_field_csv_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.csv");
    let o = hopfctl(&[
        "sample-field",
        "--level",
        "2",
        "--realization",
        "I",
        "--patch",
        "upper",
        "--grid",
        "-0.5:0.5:3,0:0:1,0:0:1,0.2:0.2:1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let header: Vec<&str> = lines[0].split(',').collect();
    // five coordinates, five 2x2 potentials, ten 2x2 field strengths, re and im
    assert_eq!(header.len(), 5 + 5 * 8 + 10 * 8);
    assert_eq!(header[5], "A1_r1c1_re");
    assert!(header.contains(&"F4_5_r2c2_im"));
    assert_eq!(*lines.last().unwrap(), "#skipped,0");
    assert_eq!(lines.len(), 1 + 3 + 1);
    for row in &lines[1..lines.len() - 1] {
        let vals: Vec<f64> = row.split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(vals.len(), header.len());
        assert!(vals.iter().all(|v| v.is_finite()));
    }
    assert!(!text.contains("NaN") && !text.contains("inf"));
}

#[test]
fn sample_field_skips_and_counts() {
    // full-dimensional grid: only (1, 0, 0) lies on the hyperboloid
    let o = hopfctl(&[
        "sample-field",
        "--level",
        "1",
        "--realization",
        "I",
        "--patch",
        "upper",
        "--grid",
        "0:3:4,0:0:1,0:2:2",
        "--mode",
        "skip",
    ]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert_eq!(text.lines().last().unwrap(), "#skipped,7");
}

#[test]
fn sample_field_json_is_deterministic() {
    let args = [
        "sample-field",
        "--level",
        "3",
        "--realization",
        "II",
        "--patch",
        "lower",
        "--grid",
        "0.1:0.2:2,0:0:1,0:0:1,0:0:1,0:0:1,0:0:1,0:0:1,0:0:1",
        "--format",
        "json",
    ];
    let a = hopfctl(&args);
    let b = hopfctl(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["columns"].as_array().unwrap().len(), v["rows"][0].as_array().unwrap().len());
    let last = v["rows"][0][8].as_f64().unwrap();
    assert!(last < 0.0);
}

#[test]
fn bad_grid_is_usage_error() {
    let o = hopfctl(&["sample-field", "--level", "2", "--realization", "I", "--patch", "upper", "--grid", "0:1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hopfctl(&["sample-field", "--level", "2", "--realization", "I", "--patch", "upper", "--grid", "0:1:2"]);
    assert_eq!(o.status.code(), Some(2));
}
