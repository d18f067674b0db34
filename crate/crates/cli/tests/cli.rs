//! End-to-end tests that spawn the real binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn spinchain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinchain"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn profile_file(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).expect("profile written");
    path
}

fn constant_profile(dir: &tempfile::TempDir) -> PathBuf {
    profile_file(dir, "constant.json", r#"{"kind":"constant","value":"1"}"#)
}

#[test]
fn verify_runs_are_byte_identical_and_pass() {
    let first = spinchain(&["verify", "--nmax", "3", "--profiles", "builtin"]);
    let second = spinchain(&["verify", "--nmax", "3", "--profiles", "builtin"]);
    assert!(first.status.success(), "verify failed: {}", stderr_of(&first));
    assert_eq!(first.stdout, second.stdout, "verify output not reproducible");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&first)).expect("json");
    assert_eq!(report["passed"], serde_json::Value::Bool(true));
    assert!(report["rows"].as_array().map_or(0, Vec::len) >= 10);
}

#[test]
fn verify_rejects_unknown_profile_sets() {
    let run = spinchain(&["verify", "--profiles", "surprise"]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr_of(&run).contains("builtin"));
}

#[test]
fn poly_verify_prints_ok() {
    let run = spinchain(&["poly", "--verify", "--nmax", "10"]);
    assert!(run.status.success());
    assert_eq!(stdout_of(&run).trim(), "identities: OK");
}

#[test]
fn poly_prints_polynomial_and_evaluates() {
    let run = spinchain(&["poly", "--n", "3", "--r", "1", "--eval", "1/2"]);
    assert!(run.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&run)).expect("json");
    assert_eq!(report["route"], "closed");
    assert!(report["value"].is_string());

    let closed = spinchain(&["poly", "--n", "3", "--r", "1", "--eval", "1/2"]);
    let recursive = spinchain(&[
        "poly",
        "--n",
        "3",
        "--r",
        "1",
        "--recursive",
        "--eval",
        "1/2",
    ]);
    let closed: serde_json::Value = serde_json::from_str(&stdout_of(&closed)).unwrap();
    let recursive: serde_json::Value = serde_json::from_str(&stdout_of(&recursive)).unwrap();
    assert_eq!(closed["value"], recursive["value"]);
}

#[test]
fn poly_requires_indices_without_verify() {
    let run = spinchain(&["poly"]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn global_csv_rows_and_monotone_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let profile = constant_profile(&dir);
    let run = spinchain(&[
        "global",
        "--profile",
        profile.to_str().unwrap(),
        "--nmax",
        "6",
        "--beta",
        "0.693147",
        "--format",
        "csv",
    ]);
    assert!(run.status.success(), "{}", stderr_of(&run));
    let text = stdout_of(&run);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,z_plus,z_pm,ratio");
    assert_eq!(lines.len(), 8, "header plus one row per n in 0..=6");
    let ratios: Vec<f64> = lines[1..]
        .iter()
        .map(|line| line.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    for pair in ratios.windows(2) {
        assert!(pair[0] > pair[1], "ratio should fall toward 1: {ratios:?}");
    }
    assert!(ratios.last().unwrap() > &1.0);
}

#[test]
fn out_is_an_alias_for_format() {
    let dir = tempfile::tempdir().unwrap();
    let profile = constant_profile(&dir);
    let args = |flag: &'static str| {
        [
            "global",
            "--profile",
            profile.to_str().unwrap(),
            "--nmax",
            "2",
            "--tau",
            "1/2",
            flag,
            "csv",
        ]
    };
    let via_format = spinchain(&args("--format"));
    let via_out = spinchain(&args("--out"));
    assert!(via_format.status.success());
    assert_eq!(via_format.stdout, via_out.stdout);
}

#[test]
fn exact_tau_emits_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let profile = constant_profile(&dir);
    let run = spinchain(&[
        "global",
        "--profile",
        profile.to_str().unwrap(),
        "--nmax",
        "0",
        "--tau",
        "1/2",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&run)).expect("json");
    assert_eq!(report["rows"][0]["z_plus"], "5/4");
    assert_eq!(report["rows"][0]["z_pm"], "1");
    assert_eq!(report["rows"][0]["ratio"], "5/4");
}

#[test]
fn global_requires_an_evaluation_mode() {
    let dir = tempfile::tempdir().unwrap();
    let profile = constant_profile(&dir);
    let run = spinchain(&[
        "global",
        "--profile",
        profile.to_str().unwrap(),
        "--nmax",
        "2",
    ]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr_of(&run).contains("--beta"));
}

#[test]
fn malformed_profile_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let profile = profile_file(&dir, "bad.json", r#"{"kind":"constant"}"#);
    let run = spinchain(&[
        "global",
        "--profile",
        profile.to_str().unwrap(),
        "--nmax",
        "2",
        "--tau",
        "1/2",
    ]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr_of(&run).contains("malformed profile"));

    let missing = dir.path().join("nowhere.json");
    let run = spinchain(&[
        "global",
        "--profile",
        missing.to_str().unwrap(),
        "--nmax",
        "2",
        "--tau",
        "1/2",
    ]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr_of(&run).contains("cannot read profile"));
}

#[test]
fn printed_variant_check_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let profile = profile_file(
        &dir,
        "distinct.json",
        r#"{"kind":"table","offset":0,"values":["1","2","3"]}"#,
    );
    let run = spinchain(&[
        "crystal",
        "--profile",
        profile.to_str().unwrap(),
        "--window",
        "0..1",
        "--variant",
        "printed",
        "--check",
    ]);
    assert_eq!(run.status.code(), Some(3));
    assert!(stderr_of(&run).contains("disagree"));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&run)).expect("json");
    assert_eq!(report["check"]["passed"], serde_json::Value::Bool(false));
    assert!(!report["check"]["mismatches"].as_array().unwrap().is_empty());

    let oracle = spinchain(&[
        "crystal",
        "--profile",
        profile.to_str().unwrap(),
        "--window",
        "0..1",
        "--check",
    ]);
    assert!(oracle.status.success(), "{}", stderr_of(&oracle));
}

#[test]
fn crystal_emits_spectra_without_a_mode_and_values_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let profile = constant_profile(&dir);
    let bare = spinchain(&[
        "crystal",
        "--profile",
        profile.to_str().unwrap(),
        "--window",
        "0..2",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&bare)).expect("json");
    let entries = report["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1 + 2 + 3 + 4, "lengths 0..=3, each with r = 0..=length");
    assert!(entries[0]["x"].is_object(), "spectrum maps energy to count");

    let evaluated = spinchain(&[
        "crystal",
        "--profile",
        profile.to_str().unwrap(),
        "--window",
        "0..2",
        "--tau",
        "1/2",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&evaluated)).expect("json");
    assert!(report["entries"][0]["x"].is_string(), "evaluated entry is one value");
}

#[test]
fn prob_single_event_matches_distribution_row() {
    let dir = tempfile::tempdir().unwrap();
    let profile = constant_profile(&dir);
    let all = spinchain(&[
        "prob",
        "--profile",
        profile.to_str().unwrap(),
        "--window",
        "0..2",
        "--boundary",
        "-+",
        "--tau",
        "2/5",
        "--event",
        "all",
    ]);
    assert!(all.status.success(), "{}", stderr_of(&all));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&all)).expect("json");
    let rows = report["distribution"].as_array().unwrap();
    assert_eq!(rows.len(), 4);

    let single = spinchain(&[
        "prob",
        "--profile",
        profile.to_str().unwrap(),
        "--window",
        "0..2",
        "--boundary",
        "-+",
        "--tau",
        "2/5",
        "--event",
        "r=2",
    ]);
    let single: serde_json::Value = serde_json::from_str(&stdout_of(&single)).expect("json");
    assert_eq!(single["probability"], rows[2]["probability"]);
}

#[test]
fn prob_rejects_bad_events_and_boundaries() {
    let dir = tempfile::tempdir().unwrap();
    let profile = constant_profile(&dir);
    let base = [
        "prob",
        "--profile",
        profile.to_str().unwrap(),
        "--window",
        "0..2",
        "--tau",
        "1/2",
    ];
    let mut bad_event = base.to_vec();
    bad_event.extend(["--boundary", "++", "--event", "r=x"]);
    let run = spinchain(&bad_event);
    assert_eq!(run.status.code(), Some(2));

    let mut bad_boundary = base.to_vec();
    bad_boundary.extend(["--boundary", "+~"]);
    let run = spinchain(&bad_boundary);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr_of(&run).contains("boundary"));
}

#[test]
fn diagnose_reports_sums_trend_and_violations() {
    let dir = tempfile::tempdir().unwrap();
    let profile = constant_profile(&dir);
    let run = spinchain(&[
        "diagnose",
        "--profile",
        profile.to_str().unwrap(),
        "--window",
        "0..4",
        "--kmax",
        "3",
        "--precision",
        "10",
    ]);
    assert!(run.status.success(), "{}", stderr_of(&run));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&run)).expect("json");
    assert_eq!(report["partial_sums"].as_array().unwrap().len(), 4);
    assert!(report["trend"].as_str().unwrap().contains("steady"));
    // Constant I=1 violates I_n + I_{n+k} > k exactly when k >= 2.
    let violations = report["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    assert!(violations.iter().all(|v| v["k"].as_i64().unwrap() >= 2));
    assert!(report["note"].as_str().unwrap().contains("diagnostic only"));
}

#[test]
fn bench_empty_sizes_gives_empty_report() {
    let run = spinchain(&["bench", "--sizes", ""]);
    assert!(run.status.success(), "{}", stderr_of(&run));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&run)).expect("json");
    assert_eq!(report["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn bench_small_sizes_agree_across_routes() {
    let run = spinchain(&["bench", "--sizes", "2,5"]);
    assert!(run.status.success(), "{}", stderr_of(&run));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&run)).expect("json");
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["agree"] == serde_json::Value::Bool(true)));
    assert!(rows[0]["oracle_ms"].is_u64(), "n=2 is small enough to enumerate");
    assert!(rows[1]["oracle_ms"].is_u64());
}

#[test]
fn unknown_flags_exit_2() {
    let run = spinchain(&["global", "--nonsense"]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn bad_window_syntax_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let profile = constant_profile(&dir);
    let run = spinchain(&[
        "crystal",
        "--profile",
        profile.to_str().unwrap(),
        "--window",
        "3-5",
    ]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr_of(&run).contains("m..n"));
}
