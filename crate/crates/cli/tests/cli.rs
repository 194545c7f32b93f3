//! End-to-end tests for the compactgraph binary: exit codes, formats, and
//! deterministic output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_compactgraph"))
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    path.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn synthesize_petersen_emits_the_edge_list() {
    let out = bin()
        .args(["synthesize", "--n", "10", "--s", "3", "--d", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let expected = std::fs::read_to_string(fixture("petersen.edges")).unwrap();
    assert_eq!(stdout(&out), expected);
}

#[test]
fn synthesize_trace_shows_combination_counts() {
    let out = bin()
        .args(["synthesize", "--n", "10", "--s", "3", "--d", "2", "--trace"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in [
        "step 0: C=210",
        "step 0.1: seed C=20",
        "step 0.2: propagate C=14",
        "step 1: +4-6 C=9",
        "step 2: +5-7 C=8",
        "solved",
    ] {
        assert!(text.contains(line), "missing `{}` in:\n{}", line, text);
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let run = || {
        bin()
            .args(["synthesize", "--n", "15", "--s", "4", "--d", "2", "--trace"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn infeasible_synthesis_exits_three() {
    let out = bin()
        .args(["synthesize", "--n", "10", "--s", "3", "--d", "2", "--g", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn zero_budget_times_out_with_exit_four() {
    let out = bin()
        .args(["synthesize", "--n", "30", "--s", "3", "--d", "4", "--g", "8"])
        .env("COMPACTGRAPH_BUDGET_MS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn seeded_synthesis_matches_fixture_up_to_relabeling() {
    let dir = std::env::temp_dir().join("compactgraph-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let solution = dir.join("seeded.edges");
    let out = bin()
        .args([
            "synthesize",
            "--n",
            "15",
            "--s",
            "4",
            "--d",
            "2",
            "--seed-file",
            &fixture("compact-15-4-2-seed.edges"),
            "--out",
            solution.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let iso = bin()
        .args(["iso", solution.to_str().unwrap(), &fixture("compact-15-4-2.edges")])
        .output()
        .unwrap();
    assert_eq!(iso.status.code(), Some(0));
    assert_eq!(stdout(&iso), "isomorphic\n");
}

#[test]
fn dot_output() {
    let out = bin()
        .args([
            "synthesize", "--n", "10", "--s", "3", "--d", "2", "--format", "dot",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("graph {\n"));
    assert!(text.contains("  0 -- 1;\n"));
    assert!(text.ends_with("}\n"));
}

#[test]
fn project_prints_the_bracket_form() {
    let out = bin()
        .args([
            "project",
            &fixture("petersen.edges"),
            "--root",
            "0",
            "--depth",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0(1(4,5),2(6,7),3(8,9))\n");
}

#[test]
fn project_edges_format_recovers_the_graph() {
    let out = bin()
        .args([
            "project",
            &fixture("petersen.proj"),
            "--root",
            "0",
            "--depth",
            "3",
            "--format",
            "edges",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let expected = std::fs::read_to_string(fixture("petersen.edges")).unwrap();
    assert_eq!(stdout(&out), expected);
}

#[test]
fn verify_pass_and_fail_exit_codes() {
    let out = bin()
        .args([
            "verify",
            &fixture("cage-30-3-4.edges"),
            "--n",
            "30",
            "--s",
            "3",
            "--d",
            "4",
            "--g",
            "8",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("result: PASS"));

    // diameter 1 cannot host ten degree-3 vertices
    let out = bin()
        .args([
            "verify",
            &fixture("petersen.edges"),
            "--n",
            "10",
            "--s",
            "3",
            "--d",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("result: FAIL"));
}

#[test]
fn iso_detects_relabelings_and_rejects_differences() {
    let same = bin()
        .args(["iso", &fixture("petersen.proj"), &fixture("petersen.edges")])
        .output()
        .unwrap();
    assert_eq!(same.status.code(), Some(0));

    let diff = bin()
        .args(["iso", &fixture("petersen.edges"), &fixture("compact-15-4-2.edges")])
        .output()
        .unwrap();
    assert_eq!(diff.status.code(), Some(2));
    assert_eq!(stdout(&diff), "not isomorphic\n");
}

#[test]
fn analyze_reports_metrics_and_class() {
    let out = bin()
        .args(["analyze", &fixture("petersen.edges")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("n: 10"));
    assert!(text.contains("m: 15"));
    assert!(text.contains("degrees: 3 (regular)"));
    assert!(text.contains("diameter: 2"));
    assert!(text.contains("girth: 5"));
    assert!(text.contains("limit-compact"));
}

#[test]
fn io_errors_exit_one() {
    let out = bin()
        .args(["analyze", "no-such-file.edges"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin()
        .args(["synthesize", "--n", "11", "--s", "3", "--d", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
