use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qhom(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qhom"));
    cmd.args(args);
    match cache {
        Some(dir) => cmd.env("QHOM_CACHE", dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn validate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhom"))
        .arg("validate")
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn warm_cache_reproduces_records_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["homology", "R3", "Alex(5,2)", "--theory", "rack,quandle", "--degrees", "1..3", "--format", "json"];
    let cold = qhom(&args, Some(dir.path()));
    assert_eq!(code(&cold), 0, "{}", stderr(&cold));
    let files = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 12);
    let warm = qhom(&args, Some(dir.path()));
    assert_eq!(cold.stdout, warm.stdout);
}

#[test]
fn partially_cached_runs_extend_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let short = qhom(&["homology", "R3", "--degrees", "1..2", "--format", "json"], Some(dir.path()));
    let long = qhom(&["homology", "R3", "--degrees", "1..4", "--format", "json"], Some(dir.path()));
    let a: Vec<Value> = serde_json::from_slice(&short.stdout).unwrap();
    let b: Vec<Value> = serde_json::from_slice(&long.stdout).unwrap();
    assert_eq!(a[..], b[..2]);
    assert_eq!(b[3]["torsion"], serde_json::json!([3, 3]));
}

#[test]
fn json_records_follow_the_schema() {
    let out = qhom(&["homology", "R3", "--degrees", "3", "--format", "json"], None);
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    let row = rows[0].as_object().unwrap();
    let keys: Vec<&str> = row.keys().map(String::as_str).collect();
    for k in ["quandle", "theory", "degree", "free_rank", "torsion", "exponent", "ms", "engine"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    let q = row["quandle"].as_object().unwrap();
    assert_eq!(q["label"], "R3");
    assert_eq!(q["size"], 3);
    assert_eq!(q["table_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(row["torsion"], serde_json::json!([3]));
    assert_eq!(row["exponent"], 3);
}

#[test]
fn csv_columns_mirror_the_schema() {
    let out = qhom(&["homology", "R3", "--degrees", "1..3", "--format", "csv"], None);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "label,size,table_sha256,theory,degree,free_rank,torsion,exponent,ms,engine"
    );
    let third: Vec<&str> = lines.nth(2).unwrap().split(',').collect();
    assert_eq!((third[4], third[5], third[6], third[7]), ("3", "1", "3", "3"));
}

#[test]
fn output_order_is_quandle_theory_degree() {
    let out = qhom(
        &["homology", "R5", "R3", "--theory", "quandle,rack", "--degrees", "1..2", "--format", "json"],
        None,
    );
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    let order: Vec<(String, String, u64)> = rows
        .iter()
        .map(|r| {
            (
                r["quandle"]["label"].as_str().unwrap().to_string(),
                r["theory"].as_str().unwrap().to_string(),
                r["degree"].as_u64().unwrap(),
            )
        })
        .collect();
    let expected = [
        ("R5", "quandle", 1),
        ("R5", "quandle", 2),
        ("R5", "rack", 1),
        ("R5", "rack", 2),
        ("R3", "quandle", 1),
        ("R3", "quandle", 2),
        ("R3", "rack", 1),
        ("R3", "rack", 2),
    ];
    let expected: Vec<(String, String, u64)> =
        expected.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), *c)).collect();
    assert_eq!(order, expected);
}

#[test]
fn reduced_flag_selects_the_augmented_complex() {
    let out = qhom(&["homology", "R3", "--theory", "quandle", "--reduced", "--degrees", "1..3", "--format", "json"], None);
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    for row in &rows {
        assert_eq!(row["theory"], "reduced-quandle");
        assert_eq!(row["free_rank"], 0);
    }
}

#[test]
fn memory_guard_refuses_before_running() {
    let out = qhom(&["homology", "R7", "--degrees", "1..5"], None);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--force"), "{}", stderr(&out));
    let out = qhom(&["homology", "R5", "--degrees", "1..10", "--force"], None);
    assert_eq!(code(&out), 2);
}

#[test]
fn malformed_table_reports_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "3\n0 2 1\n2 1\n1 0 2\n").unwrap();
    let out = validate(&[path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn validate_reports_verdicts() {
    let r3 = stdout(&validate(&["R3", "--format", "json"]));
    let v: Value = serde_json::from_str(&r3).unwrap();
    assert_eq!(v["axioms"]["quandle"]["passed"], true);
    assert_eq!(v["axioms"]["quasigroup"]["passed"], true);
    assert_eq!(v["orbits"], 1);
    assert_eq!(v["inner_group_order"], Value::Null);

    let r4 = stdout(&validate(&["R4", "--format", "json", "--inner-group"]));
    let v: Value = serde_json::from_str(&r4).unwrap();
    assert_eq!(v["axioms"]["quasigroup"]["passed"], false);
    assert_eq!(v["orbits"], 2);
    assert_eq!(v["connected"], false);
    assert_eq!(v["inner_group_order"], 4);
}

#[test]
fn validate_accepts_tables_that_are_not_quandles() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shelf.txt");
    // a*b = b: a shelf, but translations are constant.
    fs::write(&path, "2\n0 1\n0 1\n").unwrap();
    let out = validate(&[path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["axioms"]["shelf"]["passed"], true);
    assert_eq!(v["axioms"]["rack"]["passed"], false);
    assert_eq!(v["orbits"], Value::Null);
}

#[test]
fn verify_examples() {
    let g = qhom(&["verify", "R3", "--identity", "G", "--degree", "3"], None);
    assert_eq!(code(&g), 0);
    assert!(stdout(&g).contains("PASS"));

    let d = qhom(&["verify", "R4", "--identity", "D", "--degree", "2", "--expect-failure"], None);
    assert_eq!(code(&d), 0);
    assert!(stdout(&d).contains("witness"));

    let p = qhom(&["verify", "R5", "--identity", "precubic", "--degree", "2", "--format", "json"], None);
    assert_eq!(code(&p), 0);
    let report: Value = serde_json::from_slice(&p.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["clauses"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_exit_codes() {
    let needs_quasigroup = qhom(&["verify", "R4", "--identity", "D", "--degree", "2"], None);
    assert_eq!(code(&needs_quasigroup), 2);
    let over_budget = qhom(&["verify", "R5", "--identity", "G", "--degree", "6"], None);
    assert_eq!(code(&over_budget), 2);
    let sampled = qhom(
        &["verify", "R5", "--identity", "G", "--degree", "6", "--sample", "--budget", "200", "--format", "json"],
        None,
    );
    assert_eq!(code(&sampled), 0);
    let report: Value = serde_json::from_slice(&sampled.stdout).unwrap();
    assert_eq!(report["clauses"][0]["sampled"], true);
    assert_eq!(report["clauses"][0]["checked"], 200);
    let no_failure = qhom(&["verify", "R3", "--identity", "D", "--degree", "2", "--expect-failure"], None);
    assert_eq!(code(&no_failure), 1);
}

#[test]
fn theorem_marks_non_quasigroups() {
    let out = qhom(&["theorem", "ConjS4T", "Triv2", "--theory", "quandle", "--degrees", "3", "--format", "json"], None);
    assert_eq!(code(&out), 0);
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows[0]["theorem"], "N-A");
    assert_eq!(rows[0]["bound"], 24);
    assert_eq!(rows[0]["divides"], true);
    assert_eq!(rows[1]["torsion"], serde_json::json!([]));
    assert_eq!(rows[1]["theorem"], "N-A");
}

#[test]
fn multiterm_hypotheses_are_input_errors() {
    let sum = qhom(&["multiterm", "R3", "--coeffs", "1,1"], None);
    assert_eq!(code(&sum), 2);
    assert!(stderr(&sum).contains("coefficient sum nonzero"));
    let lead = qhom(&["multiterm", "R3", "R3", "--coeffs", "0,1,-1"], None);
    assert_eq!(code(&lead), 2);
    let sizes = qhom(&["multiterm", "R3", "R5", "--coeffs", "2,-1,-1"], None);
    assert_eq!(code(&sizes), 2);
}

#[test]
fn multiterm_rejects_non_distributive_families() {
    // R5 relabeled by the transposition (0 1) is a quandle but does not
    // distribute over R5.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r5swap.txt");
    fs::write(&path, "5\n0 4 3 1 2\n2 1 4 0 3\n1 3 2 4 0\n4 2 0 3 1\n3 0 1 2 4\n").unwrap();
    let out = qhom(&["multiterm", "R5", path.to_str().unwrap(), "--coeffs", "2,-1,-1"], None);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("does not distribute"), "{}", stderr(&out));
}

#[test]
fn multiterm_specialization_matches_rack_homology() {
    let rack = qhom(&["homology", "R3", "--degrees", "1..4", "--format", "json"], None);
    let multi = qhom(&["multiterm", "*0", "R3", "--coeffs", "1,-1", "--degrees", "1..4", "--format", "json"], None);
    let a: Vec<Value> = serde_json::from_slice(&rack.stdout).unwrap();
    let b: Vec<Value> = serde_json::from_slice(&multi.stdout).unwrap();
    assert_eq!(b[0]["quandle"]["label"], "(*0,R3)");
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x["free_rank"], y["free_rank"]);
        assert_eq!(x["torsion"], y["torsion"]);
    }
}

#[test]
fn usage_errors_exit_two() {
    let out = qhom(&["homology", "R3", "--degrees", "0..2"], None);
    assert_eq!(code(&out), 2);
    let out = qhom(&["homology", "NoSuchQuandle"], None);
    assert_eq!(code(&out), 2);
}
