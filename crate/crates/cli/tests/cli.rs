use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use omega_core::bounds::BoundReport;
use omega_core::format::{parse_tensor, parse_vertex_set};

fn omega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bounds_single_n() {
    let out = omega(&["bounds", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("10395"));
    assert!(text.contains("(1/27)·C(65,26)"));
    assert!(text.contains("64/27"));
}

#[test]
fn bounds_json_round_trips() {
    for n in ["2", "3", "4", "10"] {
        let out = omega(&["--format", "json", "bounds", "--n", n]);
        assert_eq!(out.status.code(), Some(0));
        let report = BoundReport::from_json(&stdout(&out)).unwrap();
        assert_eq!(report.n.to_string(), n);
        assert_eq!(report.to_json().trim(), stdout(&out).trim());
    }
}

#[test]
fn bounds_with_enumeration_fills_f0() {
    let out = omega(&["--format", "json", "bounds", "--n", "3", "--with-enumeration"]);
    assert_eq!(out.status.code(), Some(0));
    let report = BoundReport::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.enumerated, Some(66));
}

#[test]
fn bounds_range_csv_has_one_row_per_n() {
    let out = omega(&["--format", "csv", "bounds", "--n", "2", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(&rows[1][0], "3");
}

#[test]
fn bounds_rejects_bad_range() {
    let out = omega(&["bounds", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(omega(&["bogus"]).status.code(), Some(2));
}

#[test]
fn enumerate_summary_and_document() {
    let out = omega(&["enumerate", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("66 / 12 / 54"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("omega3.json");
    let out = omega(&["enumerate", "--n", "3", "--out", path_str(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let set = parse_vertex_set(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!((set.len(), set.integral_count, set.nonintegral_count), (66, 12, 54));
}

#[test]
fn enumerate_is_deterministic() {
    let a = omega(&["--format", "json", "enumerate", "--n", "3"]);
    let b = omega(&["--format", "json", "enumerate", "--n", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn enumerate_rejects_zero() {
    assert_eq!(omega(&["enumerate", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn check_latin_vertex_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("latin.json");
    // Cyclic Latin square of order 2: entry (i,j,k) is 1 when k = i + j mod 2.
    fs::write(&file, r#"{"n": 2, "entries": [[["1","0"],["0","1"]],[["0","1"],["1","0"]]]}"#).unwrap();
    let out = omega(&["check", path_str(&file)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("valid, vertex, active rank 8"));
}

#[test]
fn check_seeded_tensor() {
    let out = omega(&["--format", "json", "check", "--n", "3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["ambient_dim"], 27);
}

#[test]
fn check_reports_negative_entry() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    fs::write(&file, r#"{"n": 2, "entries": [[["-1","1"],["1","0"]],[["1","0"],["0","1"]]]}"#).unwrap();
    let out = omega(&["check", path_str(&file)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("invalid: entry (0,0,0) < 0"), "{}", stdout(&out));
}

#[test]
fn check_reports_bad_line_sum() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sum.json");
    fs::write(&file, r#"{"n": 2, "entries": [[["1/2","1/2"],["1/2","1/2"]],[["1/2","1/2"],["1/2","1/3"]]]}"#).unwrap();
    let out = omega(&["check", path_str(&file)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("invalid: line sum"), "{}", stdout(&out));
}

#[test]
fn check_rejects_malformed_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("junk.json");
    fs::write(&file, r#"{"n": 2, "entries": [[["0.5"]]]}"#).unwrap();
    let out = omega(&["check", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_missing_file_fails() {
    let out = omega(&["check", "/nonexistent/tensor.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn decompose_seeded_is_exact() {
    let out = omega(&["decompose", "--n", "3", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(at most 9)"));
    assert!(text.contains("reconstruction: exact"));
    assert_eq!(out.stdout, omega(&["decompose", "--n", "3", "--seed", "42"]).stdout);
}

#[test]
fn decompose_json_terms_are_vertices() {
    let out = omega(&["--format", "json", "decompose", "--n", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reconstruction_exact"], true);
    let terms = v["terms"].as_array().unwrap();
    assert!(!terms.is_empty() && terms.len() <= 9);
    for term in terms {
        let t = parse_tensor(&term["vertex"].to_string()).unwrap();
        assert_eq!(t.n(), 3);
    }
}

#[test]
fn decompose_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("terms.json");
    let out = omega(&["decompose", "--n", "2", "--seed", "3", "--out", path_str(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(v["n"], 2);
}

#[test]
fn latin_methods_agree() {
    for (n, count) in [("4", "576"), ("5", "161280")] {
        let out = omega(&["latin", "--n", n]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(text.contains(&format!("backtrack: L_{n} = {count}")));
        assert!(text.contains(&format!("permanent: L_{n} = {count}")));
        assert!(text.contains("agreement"));
    }
}

#[test]
fn latin_single_method() {
    let out = omega(&["--format", "csv", "latin", "--n", "3", "--method", "backtrack"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("12"));
}

#[test]
fn latin_rejects_large_n() {
    assert_eq!(omega(&["latin", "--n", "6"]).status.code(), Some(2));
}

#[test]
fn verify_tables() {
    for n_max in ["4", "5", "10"] {
        let out = omega(&["verify", "--n-max", n_max]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(text.trim_end().ends_with("all propositions hold"), "{text}");
    }
}

#[test]
fn verify_json_lists_every_n() {
    let out = omega(&["--format", "json", "verify", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let text = v.to_string();
    assert!(text.contains("9.81408e186"), "{text}");
}
