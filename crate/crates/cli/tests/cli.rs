//! End-to-end checks of the command-line surface: exit codes, schemas, and
//! byte-level determinism.

use std::fs;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symdisc"))
}

fn write(dir: &tempfile::TempDir, name: &str, content: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, content).unwrap();
    path
}

#[test]
fn member_distinguished_boundary_point() {
    let dir = tempfile::tempdir().unwrap();
    let point = write(
        &dir,
        "point.json",
        r#"{"n": 3, "s": [[3.0, 0.0], [3.0, 0.0]], "p": [1.0, 0.0]}"#,
    );
    let out = bin().arg("member").arg(&point).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("DistinguishedBoundary"), "got: {text}");
}

#[test]
fn member_outside_point_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let point = write(
        &dir,
        "point.json",
        r#"{"n": 3, "s": [[2.0, 0.0], [2.5, 0.0]], "p": [0.5, 0.0]}"#,
    );
    let out = bin().arg("member").arg(&point).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("Outside"));
}

#[test]
fn member_interior_prints_c_chain() {
    let dir = tempfile::tempdir().unwrap();
    let point = write(
        &dir,
        "point.json",
        r#"{"n": 3, "s": [[1.0, 0.0], [1.0, 0.0]], "p": [0.25, 0.0]}"#,
    );
    let out = bin().arg("member").arg(&point).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("OpenInterior"), "got: {text}");
    assert!(
        text.contains("c-level 2"),
        "recovered chain expected: {text}"
    );
    assert!(text.contains("8.0000000000000"), "c = 0.8 expected: {text}");
}

#[test]
fn member_truncated_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let point = write(&dir, "point.json", r#"{"n": 3, "s": [[3.0, 0.0]"#);
    let out = bin().arg("member").arg(&point).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn member_inconsistent_n_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let point = write(
        &dir,
        "point.json",
        r#"{"n": 4, "s": [[0.0, 0.0]], "p": [0.0, 0.0]}"#,
    );
    let out = bin().arg("member").arg(&point).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_of_diagonal_pair() {
    let dir = tempfile::tempdir().unwrap();
    let tuple = write(
        &dir,
        "tuple.json",
        r#"[
            {"rows": 2, "cols": 2, "data": [[2.0,0.0],[0.0,0.0],[0.0,0.0],[5.0,0.0]]},
            {"rows": 2, "cols": 2, "data": [[7.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]]}
        ]"#,
    );
    let out = bin().arg("spectrum").arg(&tuple).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 2);
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
}

#[test]
fn fot_scalar_tuple_report() {
    let dir = tempfile::tempdir().unwrap();
    let tuple = write(
        &dir,
        "tuple.json",
        r#"{
            "S": [
                {"rows": 1, "cols": 1, "data": [[1.0, 0.0]]},
                {"rows": 1, "cols": 1, "data": [[1.0, 0.0]]}
            ],
            "P": {"rows": 1, "cols": 1, "data": [[0.25, 0.0]]}
        }"#,
    );
    let out = bin().arg("fot").arg(&tuple).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["defect_rank"], 1);
    let f00 = v["F"][0]["data"][0][0].as_f64().unwrap();
    assert!((f00 - 0.8).abs() < 1e-10, "F_1 = 0.8, got {f00}");
}

#[test]
fn variety_check_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let nil = r#"[{"rows": 2, "cols": 2, "data": [[0.0,0.0],[1.0,0.0],[0.0,0.0],[0.0,0.0]]}]"#;
    let mats = write(&dir, "mats.json", nil);

    let out = bin()
        .arg("variety")
        .arg("check")
        .arg(&mats)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], true);

    let out = bin()
        .args(["variety", "trace"])
        .arg(&mats)
        .args(["--grid", "4x8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "p_re,p_im,s1_re,s1_im,region");
    // 32 fibers x 2 points per fiber
    assert_eq!(text.lines().count(), 1 + 64);

    // invalid data exits 1 with the defect report
    let bad = write(
        &dir,
        "bad.json",
        r#"[
            {"rows": 2, "cols": 2, "data": [[2.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]},
            {"rows": 2, "cols": 2, "data": [[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]}
        ]"#,
    );
    let out = bin()
        .arg("variety")
        .arg("check")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);

    // empty list is a usage error
    let empty = write(&dir, "empty.json", "[]");
    let out = bin()
        .arg("variety")
        .arg("check")
        .arg(&empty)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trace_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let nil = r#"[{"rows": 2, "cols": 2, "data": [[0.0,0.0],[1.0,0.0],[0.0,0.0],[0.0,0.0]]}]"#;
    let mats = write(&dir, "mats.json", nil);
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    for out in [&out_a, &out_b] {
        let st = bin()
            .args(["variety", "trace"])
            .arg(&mats)
            .args(["--grid", "3x6", "--out"])
            .arg(out)
            .status()
            .unwrap();
        assert!(st.success());
    }
    assert_eq!(fs::read(&out_a).unwrap(), fs::read(&out_b).unwrap());
}

#[test]
fn dilate_reports_residuals_and_dumps_blocks() {
    let dir = tempfile::tempdir().unwrap();
    // P = 0 scalar pair: the dilation is exact at any degree
    let tuple = write(
        &dir,
        "tuple.json",
        r#"{
            "S": [
                {"rows": 1, "cols": 1, "data": [[0.3, 0.1]]},
                {"rows": 1, "cols": 1, "data": [[0.2, -0.2]]}
            ],
            "P": {"rows": 1, "cols": 1, "data": [[0.0, 0.0]]}
        }"#,
    );
    let blocks = dir.path().join("blocks");
    let out = bin()
        .arg("dilate")
        .arg(&tuple)
        .args(["--degree", "6", "--dump-blocks"])
        .arg(&blocks)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["isometry_defect"].as_f64().unwrap() < 1e-12);
    assert!(v["moment_max_residual"].as_f64().unwrap() < 1e-10);
    assert!(blocks.join("t1.json").exists());
    assert!(blocks.join("v.json").exists());
    assert!(blocks.join("w.json").exists());
}

#[test]
fn vncheck_generated_tuple_passes() {
    let dir = tempfile::tempdir().unwrap();
    // generate_pure([0.5, 0.2], N = 2) written out explicitly: order 3 blocks
    let t = symdisc::gamma::generate_pure(
        &[
            symdisc::matrix::CMatrix::from_element(1, 1, symdisc::matrix::re(0.5)),
            symdisc::matrix::CMatrix::from_element(1, 1, symdisc::matrix::re(0.2)),
        ],
        2,
        1e-9,
    )
    .unwrap();
    let tuple = write(
        &dir,
        "tuple.json",
        &serde_json::to_string(&symdisc::gamma::gamma_tuple_to_json(&t)).unwrap(),
    );
    let out = bin()
        .arg("vncheck")
        .arg(&tuple)
        .args(["--polys", "24"])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["worst_slack"].as_f64().unwrap() >= -1e-7);
    assert!(v["fot_distance"].as_f64().unwrap() < 1e-10);
}

#[test]
fn vncheck_boundary_family_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    // diagonal tuple with joint eigenvalue (2, 1, 0) on ∂Γ_3 \ bΓ_3
    let tuple = write(
        &dir,
        "tuple.json",
        r#"{
            "S": [
                {"rows": 2, "cols": 2, "data": [[2.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]},
                {"rows": 2, "cols": 2, "data": [[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]}
            ],
            "P": {"rows": 2, "cols": 2, "data": [[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]}
        }"#,
    );
    let out = bin().arg("vncheck").arg(&tuple).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn selftest_fails_honestly_at_tightened_tolerance() {
    // truncation-bounded criteria cannot meet 1e-15; the selftest must say so
    let out = bin().args(["--tol", "1e-15", "selftest"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"), "expected failures listed:\n{text}");
    assert!(text.contains("criteria passed"));
}
