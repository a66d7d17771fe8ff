//! End-to-end checks of the command-line interface: flags, exit codes,
//! JSON output shape, determinism and the on-disk result cache.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_einstein-cspace"))
}

fn run(args: &[&str], cache: &Path) -> Output {
    bin()
        .args(args)
        .env("EINSTEIN_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn solve_reports_table_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["solve", "-l", "1", "-m", "2", "-n", "3"],
        dir.path(),
    );
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["params"]["l"], 1);
    assert_eq!(v["family_complete"], true);
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 2);
    let x1 = sols[0]["metric"]["x1"].as_f64().unwrap();
    assert!((x1 - 0.472295).abs() < 1e-4);
    for key in ["lambda", "residual", "method", "condition"] {
        assert!(sols[0].get(key).is_some(), "missing field {key}");
    }
    assert_eq!(v["isometry_classes"].as_array().unwrap().len(), 2);
    assert!(v.get("wall_time_ms").is_some());
}

#[test]
fn solve_warns_on_degenerate_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["solve", "-l", "1", "-m", "1", "-n", "1"], dir.path());
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["solutions"].as_array().unwrap().len(), 1);
    assert_eq!(v["family_complete"], false);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("family-incomplete"),
        "stderr: {stderr}"
    );
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    // unparseable arguments are a usage error
    let out = run(&["solve", "-l", "1", "-m", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "-l", "x", "-m", "2", "-n", "3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    // zero parameters are rejected with the same code
    let out = run(&["solve", "-l", "0", "-m", "2", "-n", "3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    // unknown reproduction target
    let out = run(&["reproduce", "--target", "table7"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_box_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["degree", "-l", "1", "-m", "2", "-n", "3", "--box", "5", "1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    // --no-cache so both runs recompute
    let a = run(
        &["solve", "-l", "2", "-m", "2", "-n", "1", "--no-cache"],
        dir.path(),
    );
    let b = run(
        &["solve", "-l", "2", "-m", "2", "-n", "1", "--no-cache"],
        dir.path(),
    );
    let mut va = stdout_json(&a);
    let mut vb = stdout_json(&b);
    // wall time is the only run-dependent field
    va.as_object_mut().unwrap().remove("wall_time_ms");
    vb.as_object_mut().unwrap().remove("wall_time_ms");
    assert_eq!(va, vb);
}

#[test]
fn cache_roundtrip_and_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(&["solve", "-l", "1", "-m", "2", "-n", "3"], dir.path());
    assert!(first.status.success());
    let cache_file = dir.path().join("solve-1-2-3-double.json");
    assert!(cache_file.exists());
    let cached_bytes = std::fs::read(&cache_file).unwrap();

    // a second run must serve the identical cached report (wall time included)
    let second = run(&["solve", "-l", "1", "-m", "2", "-n", "3"], dir.path());
    let va = stdout_json(&first);
    let vb = stdout_json(&second);
    assert_eq!(va, vb);
    assert_eq!(std::fs::read(&cache_file).unwrap(), cached_bytes);

    // corruption falls back to recomputation and heals the file
    std::fs::write(&cache_file, b"{broken").unwrap();
    let third = run(&["solve", "-l", "1", "-m", "2", "-n", "3"], dir.path());
    assert!(third.status.success());
    let healed: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&cache_file).unwrap()).unwrap();
    assert_eq!(healed["params"]["l"], 1);
}

#[test]
fn csv_projection_of_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let out = run(
        &[
            "solve",
            "-l",
            "1",
            "-m",
            "1",
            "-n",
            "2",
            "--csv",
            csv.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3); // header + two solutions
    assert!(lines[0].starts_with("l,m,n,x1,x2,x3,v4,v5,c,lambda"));
}

#[test]
fn flag_and_degree_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["flag", "-l", "1", "-m", "2", "-n", "3"], dir.path());
    assert!(out.status.success());
    let v = stdout_json(&out);
    let mets = v["metrics"].as_array().unwrap();
    assert_eq!(mets.len(), 4);
    let signs: Vec<i64> = mets.iter().map(|m| m["sign"].as_i64().unwrap()).collect();
    assert_eq!(signs, vec![1, -1, -1, -1]);

    let out = run(
        &["degree", "-l", "3", "-m", "4", "-n", "5", "--t", "1"],
        dir.path(),
    );
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["degree"], -2);
    assert_eq!(v["roots"].as_array().unwrap().len(), 4);
}

#[test]
fn classify_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["classify", "--family", "A", "--rank-max", "5"],
        dir.path(),
    );
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["count"].as_u64().unwrap() > 10);

    let out = run(&["classify", "--family", "exceptional"], dir.path());
    let v = stdout_json(&out);
    assert_eq!(v["count"], 110);
}

#[test]
fn reproduce_flag_target_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["reproduce", "--target", "flag"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
}

#[test]
fn reproduce_table3prime_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["reproduce", "--target", "table3prime"], dir.path());
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-4);
}

#[test]
fn extended_precision_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "solve",
            "-l",
            "100000",
            "-m",
            "2",
            "-n",
            "3",
            "--precision",
            "extended",
            "--no-cache",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["precision"], "extended");
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 2);
    let x1 = sols[0]["metric"]["x1"].as_f64().unwrap();
    assert!((x1 - 0.49999812508758).abs() / 0.5 < 1e-8);
}
