//! End-to-end checks of the `etacone` binary: exit codes, output formats and
//! JSON round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

use etacone::cli::TraceReport;
use etacone::{AxiomReport, Classification, RealTable, SolveReport};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn fixture_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn etacone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etacone"))
        .args(args)
        .output()
        .expect("spawn etacone")
}

fn code(args: &[&str]) -> i32 {
    etacone(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(etacone(args).stdout).unwrap()
}

/// Parses the emitted JSON into the library type and re-serializes it.
fn assert_round_trip<T: DeserializeOwned + Serialize>(args: &[&str]) -> T {
    let text = stdout(args);
    let parsed: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    let again = serde_json::to_string_pretty(&parsed).unwrap();
    assert_eq!(text.trim_end(), again, "{args:?} does not round-trip");
    parsed
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", &fixture_file("three_point_cone.tbl")]), 0);
    assert_eq!(code(&["verify", "three_point_cone"]), 0);
    assert_eq!(code(&["verify", &fixture_file("three_point_cone_3401.tbl")]), 1);
    assert_eq!(code(&["verify", &fixture_file("equilateral.tbl")]), 0);
    assert_eq!(code(&["verify", "nat_infinity"]), 1);
    assert_eq!(code(&["verify", "half_map"]), 0);
}

#[test]
fn malformed_table_reports_line_number() {
    let out = etacone(&["verify", &fixture_file("malformed.tbl")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["verify", "no_such_fixture_or_file"]), 2);
    assert_eq!(code(&["classify", "half_map"]), 2);
    assert_eq!(code(&["solve", "half_map", "--map", "warp 3"]), 2);
    assert_eq!(code(&["solve", "half_map", "--x0", "5000"]), 2);
    assert_eq!(code(&["--format", "xml", "verify", "three_point_cone"]), 2);
}

#[test]
fn solve_exit_codes_follow_status() {
    assert_eq!(code(&["solve", "half_map", "--scheme", "banach", "--x0", "1"]), 0);
    assert_eq!(
        code(&[
            "solve",
            "square_map",
            "--scheme",
            "hardy-rogers",
            "--alpha",
            "0.25",
            "--x0",
            "0.25"
        ]),
        0
    );
    assert_eq!(
        code(&[
            "--max-iter",
            "2",
            "solve",
            "half_map",
            "--scheme",
            "banach",
            "--x0",
            "1"
        ]),
        4
    );
    assert_eq!(
        code(&["solve", "square_map", "--map", "reflect 0.25", "--x0", "0.1"]),
        3
    );
    assert_eq!(
        code(&[
            "solve",
            &fixture_file("collapse_map.tbl"),
            "--scheme",
            "strict",
            "--x0",
            "1"
        ]),
        0
    );
}

#[test]
fn solve_reports_fixed_point_at_zero() {
    let r: SolveReport = assert_round_trip(&["solve", "half_map", "--x0", "1", "--format", "json"]);
    let x = match r.fixed_point {
        Some(etacone::PointValue::Value(x)) => x,
        other => panic!("{other:?}"),
    };
    assert!(x.abs() < 1e-4 && r.residual <= 1e-10);
    assert!(r.preconditions_hold());
}

#[test]
fn json_round_trips() {
    let tp = fixture_file("three_point_cone.tbl");
    let eta = fixture_file("eta_metric_3pt.tbl");
    let _: AxiomReport = assert_round_trip(&["verify", &tp, "--show-checks", "--format", "json"]);
    let _: AxiomReport = assert_round_trip(&["verify", "function_space", "--format", "json"]);
    let _: AxiomReport = assert_round_trip(&["verify", "square_map", "--format", "json"]);
    let _: Classification = assert_round_trip(&["classify", &eta, "--format", "json"]);
    let _: RealTable = assert_round_trip(&["min-eta", &eta, "--format", "json"]);
    let _: SolveReport = assert_round_trip(&[
        "solve",
        "square_map",
        "--scheme",
        "hardy-rogers",
        "--alpha",
        "0.25",
        "--x0",
        "0.25",
        "--format",
        "json",
    ]);
    let _: SolveReport = assert_round_trip(&["solve", "half_map", "--scheme", "power", "--format", "json"]);
    let _: TraceReport = assert_round_trip(&["trace", "half_map", "--x0", "1", "--format", "json"]);
}

#[test]
fn classify_examples() {
    let c: Classification = assert_round_trip(&["classify", "three_point_cone", "--format", "json"]);
    assert_eq!(c.constant, 1000.0 / 680.0);
    let c: Classification = assert_round_trip(&["classify", &fixture_file("equilateral.tbl"), "--format", "json"]);
    assert_eq!((c.class, c.constant), (etacone::MetricClass::Metric, 1.0));
    assert!(stdout(&["classify", &fixture_file("equilateral.tbl")]).starts_with("metric"));
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn trace_csv_columns() {
    let rows = csv_rows(&stdout(&["trace", "half_map", "--x0", "1"]));
    assert_eq!(rows[0][..5], ["n", "x_n", "d_n", "eta_tail_max", "s_n"]);
    let row1 = &rows[2];
    assert_eq!(row1[0], "1");
    assert_eq!(row1[2].parse::<f64>().unwrap(), 1.0 / 16.0);
    // 17 significant digits: one leading digit plus 16 decimals.
    let mantissa = row1[1].split('e').next().unwrap();
    assert_eq!(mantissa.len(), "5.".len() + 16, "{}", row1[1]);
}

#[test]
fn constant_map_trace_is_one_row() {
    let rows = csv_rows(&stdout(&["trace", "half_map", "--map", "const 0.5", "--x0", "0.5"]));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][2].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn square_map_steps_shrink_superlinearly() {
    let rows = csv_rows(&stdout(&["trace", "square_map", "--x0", "0.25"]));
    let d: Vec<f64> = rows[1..]
        .iter()
        .map(|r| r[2].parse().unwrap())
        .filter(|&v: &f64| v > 0.0)
        .collect();
    assert!(d.len() >= 4);
    for w in d.windows(3) {
        assert!(w[2] / w[1] < w[1] / w[0], "{d:?}");
    }
}

#[test]
fn export_then_verify_matches_fixture() {
    let dir = std::env::temp_dir().join(format!("etacone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["three_point_cone", "eta_metric_3pt", "nat_infinity", "function_space"] {
        let path = dir.join(format!("{name}.tbl"));
        let path = path.to_str().unwrap();
        assert_eq!(code(&["export-fixture", name, "-o", path]), 0);
        let direct = stdout(&["verify", name, "--format", "json"]);
        let exported = stdout(&["verify", path, "--format", "json"]);
        assert_eq!(direct, exported, "{name}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn human_output_is_the_default() {
    let text = stdout(&["verify", &fixture_file("three_point_cone_3401.tbl")]);
    assert!(text.contains("(1, 2, 3)") || text.contains("1, 2, 3"), "{text}");
    assert!(!text.trim_start().starts_with('{'));
}
