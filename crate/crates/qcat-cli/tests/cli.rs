//! End-to-end tests of the binary: exit codes, report schema round-trip,
//! and byte-identical machine-readable output.

use qcat_cli::report::RunReport;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn check_passes_on_a_valid_file() {
    let out = run(&["check", fixture("banach_grid.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("category-axioms"));
    assert!(text.contains("contraction"));
}

#[test]
fn check_fails_with_witness_on_triangle_violation() {
    let out = run(&["check", fixture("triangle_violation.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("composition"), "{text}");
    assert!(text.contains("FAIL"), "{text}");
}

#[test]
fn malformed_json_exits_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ \"version\": \"v1\", ").unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line"), "{err}");
}

#[test]
fn wrong_schema_version_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v2.json");
    std::fs::write(
        &path,
        r#"{"version": "v2", "quantale": "lawvere", "category": {"objects": [], "hom": []}}"#,
    )
    .unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("version"), "{err}");
}

#[test]
fn solve_finds_the_grid_fixpoint() {
    let out = run(&[
        "solve",
        fixture("banach_grid.json").to_str().unwrap(),
        "--start",
        "p3",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let report: RunReport = serde_json::from_str(&stdout(&out)).unwrap();
    let solve = report.solve.expect("solve section");
    assert_eq!(solve.starts.len(), 1);
    assert_eq!(solve.starts[0].status, "fixpoint-found");
    assert_eq!(solve.starts[0].fixpoint.as_deref(), Some("p0"));
    assert!(solve.starts[0].cauchy.as_ref().unwrap().stabilized);
}

#[test]
fn sweep_classifies_two_components_as_disconnected() {
    let out = run(&[
        "solve",
        fixture("two_component.json").to_str().unwrap(),
        "--sweep",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let report: RunReport = serde_json::from_str(&stdout(&out)).unwrap();
    let solve = report.solve.expect("solve section");
    assert_eq!(solve.starts.len(), 8);
    assert!(solve
        .starts
        .iter()
        .all(|s| s.status == "fixpoint-found"));
    assert_eq!(solve.classifications.len(), 1);
    assert_eq!(solve.classifications[0].case, "disconnected");
}

#[test]
fn precondition_failure_exits_one() {
    let out = run(&[
        "solve",
        fixture("isolated_start.json").to_str().unwrap(),
        "--start",
        "u",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: RunReport = serde_json::from_str(&stdout(&out)).unwrap();
    let solve = report.solve.expect("solve section");
    assert_eq!(solve.starts[0].status, "precondition-failed");
    assert!(!report.passed);
}

#[test]
fn fuzzy_and_pm_files_check_clean() {
    for name in ["fuzzy_order.json", "pm_grid.json"] {
        let out = run(&["check", fixture(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
    }
}

#[test]
fn json_reports_round_trip_and_are_byte_identical() {
    let path = fixture("banach_grid.json");
    let args = ["check", path.to_str().unwrap(), "--json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second), "reports must be deterministic");

    let text = stdout(&first);
    let parsed: RunReport = serde_json::from_str(&text).unwrap();
    let reserialized = serde_json::to_string_pretty(&parsed).unwrap();
    let reparsed: RunReport = serde_json::from_str(&reserialized).unwrap();
    assert_eq!(parsed, reparsed);
    assert_eq!(parsed.version, "v1");

    // The seeded demo is deterministic too.
    let demo_args = ["demo", "delta-counterexample", "--json"];
    let a = run(&demo_args);
    let b = run(&demo_args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn demos_run_and_list() {
    let out = run(&["list-demos", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: RunReport = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<String> = report
        .demos
        .expect("listings")
        .into_iter()
        .map(|d| d.name)
        .collect();
    for expected in [
        "banach",
        "boyd-wong",
        "fuzzy",
        "pm-embed",
        "delta-counterexample",
        "boolean-degenerate",
    ] {
        assert!(names.contains(&expected.to_string()), "{names:?}");
    }

    for name in names {
        let out = run(&["demo", &name]);
        assert_eq!(out.status.code(), Some(0), "demo {name}: {}", stdout(&out));
    }

    let out = run(&["demo", "nonexistent"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_start_is_a_usage_error() {
    let out = run(&[
        "solve",
        fixture("banach_grid.json").to_str().unwrap(),
        "--start",
        "zz",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
