//! End-to-end checks of the `crawler` binary: subcommand output shapes and
//! the documented exit codes (0 ok, 1 strict failure, 2 input error).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn crawler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crawler"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn repo_file(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("crawler-cli-test-{}-{name}", std::process::id()))
}

#[test]
fn validate_design_reports_and_exits_clean() {
    let out = crawler(&["validate-design", &repo_file("data/design.json")]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("sprocket_torque_nm: 0.937500"));
    assert!(text.contains("lug_separation_below_minimum"));
}

#[test]
fn validate_design_strict_flags_reference_shortfall() {
    let out = crawler(&[
        "validate-design",
        &repo_file("data/design.json"),
        "--strict",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn validate_design_bad_file_is_input_error() {
    let out = crawler(&["validate-design", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn chain_path_pitch_csv_schema() {
    let out = crawler(&[
        "chain-path",
        "--axis",
        "pitch",
        "--from",
        "0",
        "--to",
        "25",
        "--steps",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "angle_deg,len_A_analytic_m,len_C_analytic_m,len_A_oracle_m,len_C_oracle_m,delta_diff_m"
    );
    assert_eq!(lines.count(), 6);
}

#[test]
fn chain_path_out_of_range_is_input_error() {
    let out = crawler(&[
        "chain-path", "--axis", "pitch", "--from", "0", "--to", "60", "--steps", "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_yaw_with_oracle_fills_oracle_columns() {
    let path = scratch("yaw.csv");
    let out = crawler(&[
        "sweep",
        "--axis",
        "yaw",
        "--steps",
        "5",
        "--oracle",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let last = text.lines().last().unwrap();
    // All seven columns populated when the oracle runs.
    assert_eq!(last.split(',').filter(|c| !c.is_empty()).count(), 7);
}

#[test]
fn plan_pipe_bend_prints_expected_primitive_order() {
    let out = crawler(&[
        "plan",
        "--robot",
        "pipe-climber",
        "--env",
        &repo_file("data/env/pipe_bend.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let names: Vec<&str> = text
        .lines()
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(
        names,
        vec![
            "ADJUST_SEA_STIFFNESS",
            "ADJUST_SEA_STIFFNESS",
            "ROLL_ALONG_PIPE",
            "SET_BEND",
            "SET_BEND",
            "SET_BEND",
            "ADJUST_CHAIN_TENSION",
            "ADJUST_CHAIN_TENSION",
            "ADJUST_CHAIN_TENSION",
            "CRAWL",
        ]
    );
}

#[test]
fn simulate_writes_deterministic_trace() {
    let a = scratch("trace-a.csv");
    let b = scratch("trace-b.csv");
    for path in [&a, &b] {
        let out = crawler(&[
            "simulate",
            &repo_file("data/scenarios/snake_uneven.json"),
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&out.stdout).contains("ticks: 100"));
    }
    let csv_a = std::fs::read(&a).unwrap();
    let csv_b = std::fs::read(&b).unwrap();
    std::fs::remove_file(&a).ok();
    std::fs::remove_file(&b).ok();
    assert_eq!(csv_a, csv_b);
    assert!(csv_a.starts_with(b"time_s,x_m,y_m,z_m,heading_deg,roll_deg,stance_m,m0_theta_deg"));
}

#[test]
fn simulate_strict_fails_on_flagged_scenario() {
    // The quadruped spends its transform ticks above the corridor
    // clearance, so flags are raised and strict mode reports them.
    let out = crawler(&[
        "simulate",
        &repo_file("data/scenarios/quad_corridor.json"),
        "--strict",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let relaxed = crawler(&["simulate", &repo_file("data/scenarios/quad_corridor.json")]);
    assert_eq!(relaxed.status.code(), Some(0));
}
