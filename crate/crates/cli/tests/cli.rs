use std::process::Command;

use bmwcert::rmatrix_file::import_rmatrix_path;
use bmwcert_core::families::{build_standard, Series};

fn bmwcert(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bmwcert"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn so4_passes() {
    let (code, out, _) = bmwcert(&["verify", "--family", "so", "--dim", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("status: pass"));
}

#[test]
fn wrong_nu_fails() {
    let (code, out, _) = bmwcert(&["verify", "--family", "sp", "--dim", "2", "--nu", "q^-3"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["verify", "--family", "sp", "--dim", "4", "--report", "json"];
    let (_, a, _) = bmwcert(&args);
    let (_, b, _) = bmwcert(&args);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for key in [
        "nu", "mu", "trace_C", "trace_D", "epsilon", "rank_K", "X_diag",
    ] {
        assert!(v["derived"].get(key).is_some(), "{key}");
    }
}

#[test]
fn export_round_trips_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("so3.json");
    let (code, _, err) = bmwcert(&[
        "export",
        "--family",
        "so",
        "--dim",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let imported = import_rmatrix_path(&path).unwrap();
    assert_eq!(&imported.r, build_standard(Series::So, 3).unwrap().r());
    for extra in [&[][..], &["--detect-nu"][..], &["--at-s", "3/2"][..]] {
        let mut args = vec!["verify", "--input", path.to_str().unwrap()];
        args.extend_from_slice(extra);
        let (code, out, err) = bmwcert(&args);
        assert_eq!(code, 0, "{extra:?}: {out}{err}");
    }
}

#[test]
fn bad_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(bmwcert(&["verify", "--input", bad.to_str().unwrap()]).0, 2);
    std::fs::write(
        &bad,
        r#"{"dim": 2, "entries": [{"out": [1, 1], "in": [1, 1], "coeff": "q^(1/3)"}]}"#,
    )
    .unwrap();
    let (code, _, err) = bmwcert(&["verify", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("parse error"), "{err}");
    assert_eq!(
        bmwcert(&["verify", "--input", "/definitely/missing.json"]).0,
        2
    );
    assert_eq!(bmwcert(&["verify", "--family", "sp", "--dim", "3"]).0, 2);
    assert_eq!(
        bmwcert(&["verify", "--family", "so", "--dim", "3", "--at-s", "1"]).0,
        2
    );
    assert_eq!(
        bmwcert(&["verify", "--family", "so", "--dim", "3", "--at-s", "x"]).0,
        2
    );
    assert_eq!(
        bmwcert(&["verify", "--family", "so", "--dim", "3", "--nu", "0"]).0,
        2
    );
    assert_eq!(bmwcert(&["verify"]).0, 2);
    assert_eq!(bmwcert(&["frobnicate"]).0, 2);
}

#[test]
fn pole_at_evaluation_point_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("pole.json");
    std::fs::write(
        &f,
        r#"{"dim": 1, "entries": [{"out": [1, 1], "in": [1, 1], "coeff": "1/(s - 2)"}]}"#,
    )
    .unwrap();
    let (code, _, err) = bmwcert(&["verify", "--input", f.to_str().unwrap(), "--at-s", "2"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn permutation_input_aborts() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.json");
    std::fs::write(
        &f,
        r#"{"dim": 2, "entries": [
            {"out": [1, 1], "in": [1, 1], "coeff": "1"}, {"out": [2, 2], "in": [2, 2], "coeff": "1"},
            {"out": [1, 2], "in": [2, 1], "coeff": "1"}, {"out": [2, 1], "in": [1, 2], "coeff": "1"}]}"#,
    )
    .unwrap();
    let (code, out, _) = bmwcert(&["verify", "--input", f.to_str().unwrap(), "--report", "json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "aborted");
}

#[test]
fn report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let (code, stdout, _) = bmwcert(&[
        "verify",
        "--family",
        "so",
        "--dim",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert!(std::fs::read_to_string(out).unwrap().contains("rtt.lemma"));
}
