use std::fs;

use cubemob_cli::run;
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cubemob").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn zero_dimension_is_a_usage_error() {
    let (code, out, err) = invoke(&["faces", "--n", "0"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("--n"));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(invoke(&["frobnicate"]).0, 2);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("derangements"));
}

#[test]
fn subalgebra_table_for_one_cube_has_two_rows() {
    let (code, out, _) = invoke(&["subalgebras", "--n", "1", "--format", "table"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2 + 2);
}

#[test]
fn closure_method_matches_structural() {
    for n in ["1", "2", "3"] {
        let a = invoke(&["subalgebras", "--n", n, "--format", "csv"]);
        let b = invoke(&["subalgebras", "--n", n, "--method", "closure", "--format", "csv"]);
        assert_eq!(a, b);
    }
    assert_eq!(invoke(&["subalgebras", "--n", "4", "--method", "closure"]).0, 2);
}

#[test]
fn derangements_both_methods_agree() {
    let (code, out, _) = invoke(&["derangements", "--n", "2", "--method", "both", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["inversion"], 3);
    assert_eq!(v["direct"], 3);
    assert_eq!(v["agree"], true);
    let (_, out, _) = invoke(&["derangements", "--n", "1"]);
    assert!(out.contains("\"inversion\": 1"));
}

#[test]
fn inversion_beyond_its_range_is_refused() {
    assert_eq!(invoke(&["derangements", "--n", "5", "--method", "inversion"]).0, 2);
}

#[test]
fn mobius_report_lists_printed_discrepancies() {
    let (code, out, _) = invoke(&["mobius", "--n", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mu_bruteforce"], 3);
    assert_eq!(v["mu_recurrence_adjudicated"], 3);
    assert!(!v["discrepancies"].as_array().unwrap().is_empty());
}

#[test]
fn audit_exits_three_on_discrepancy() {
    let (code, out, _) = invoke(&["audit", "--n", "2"]);
    assert_eq!(code, 3);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["checks_passed"], v["checks_total"]);
}

#[test]
fn census_csv_header_is_fixed() {
    let (code, out, _) = invoke(&["census", "--n", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("id,type,r,k,orbit_formula,orbit_brute,"));
}

#[test]
fn large_census_is_formula_only() {
    let (code, out, _) = invoke(&["census", "--n", "10"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verification"]["mode"], "none");
}

#[test]
fn corrupt_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let clean = invoke(&["mobius", "--n", "3"]);
    let cold = invoke(&["mobius", "--n", "3", "--cache-dir", path]);
    fs::write(dir.path().join("cubemob.cache"), b"CUBEMOBC\x01\xff\xff").unwrap();
    let damaged = invoke(&["mobius", "--n", "3", "--cache-dir", path]);
    let warm = invoke(&["mobius", "--n", "3", "--cache-dir", path]);
    assert_eq!(clean, cold);
    assert_eq!(cold, damaged);
    assert_eq!(cold, warm);
}
