//! Process-level tests of the subcommands beyond the eval contract:
//! output formats, exit codes, file round trips, and the REPL.

use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperalg"))
}

fn run(args: &[&str]) -> (Option<i32>, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn eval_json_matches_text() {
    let (code, text, _) = run(&["eval", "--algebra", "omega", "exp(i*1)"]);
    assert_eq!(code, Some(0));
    let (code, json, _) = run(&["eval", "--algebra", "omega", "--output", "json", "exp(i*1)"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["display"].as_str().unwrap(), text.trim());
    let c = v["coefficients"].as_array().unwrap();
    assert!((c[0].as_f64().unwrap() - 1.0f64.cos()).abs() < 1e-12);
    assert!((c[1].as_f64().unwrap() - 1.0f64.sin()).abs() < 1e-12);
}

#[test]
fn eval_csv_output() {
    let (code, csv, _) = run(&["eval", "--output", "csv", "1+2i-3j"]);
    assert_eq!(code, Some(0));
    assert_eq!(csv, "a,b,c,d\n1,2,-3,0\n");
}

#[test]
fn syntax_error_is_domain_error() {
    let (code, _, err) = run(&["eval", "2**"]);
    assert_eq!(code, Some(1));
    assert!(err.contains("position 2"), "stderr was: {err}");
}

#[test]
fn unknown_flag_is_usage_error() {
    let (code, _, _) = run(&["eval", "--bogus", "1"]);
    assert_eq!(code, Some(2));
    let (code, _, err) = run(&["props", "--output", "csv"]);
    assert_eq!(code, Some(2));
    assert!(err.contains("usage"));
}

#[test]
fn complex_algebra_rejects_phi_basis() {
    let (code, _, err) = run(&["eval", "--algebra", "complex", "j*j"]);
    assert_eq!(code, Some(1));
    assert!(err.contains("span(1, i)"), "stderr was: {err}");
    let (code, out, _) = run(&["eval", "--algebra", "complex", "i*i"]);
    assert_eq!(code, Some(0));
    assert_eq!(out.trim(), "-1");
}

#[test]
fn props_json_reports_omega_structure() {
    let (code, json, _) = run(&["props", "--algebra", "omega", "--output", "json"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["commutative"], true);
    assert_eq!(v["associative"], true);
    assert!(v["zero_divisor_witness"].is_array());
}

#[test]
fn algebra_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("omega.json");
    let table = hyperalg::MultiplicationTable::omega();
    hyperalg::io::write_table_json(&path, &table).unwrap();
    let arg = format!("file:{}", path.display());
    let (code, out, _) = run(&["eval", "--algebra", &arg, "i*j"]);
    assert_eq!(code, Some(0));
    assert_eq!(out.trim(), "-k");

    let (code, _, err) = run(&["eval", "--algebra", "file:/nonexistent.json", "1"]);
    assert_eq!(code, Some(1));
    assert!(!err.is_empty());
}

#[test]
fn search_writes_result_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let out_arg = path.display().to_string();
    let (code, text, _) =
        run(&["search", "--commutative", "--i2", "-1", "--workers", "2", "--out", &out_arg]);
    assert_eq!(code, Some(0));
    assert!(text.contains("candidates:        32768"), "stdout was: {text}");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["total_candidates"], 32768);
    assert_eq!(v["survivor_count"], v["survivors"].as_array().unwrap().len());
}

#[test]
fn dft_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let forward = dir.path().join("fwd.csv");
    let back = dir.path().join("back.csv");
    std::fs::write(&input, "index,a,b,c,d\n0,0,0,1,0.5\n1,0,0,-1,2\n2,0,0,0,1\n").unwrap();

    let (code, _, _) = run(&[
        "dft",
        "--in",
        &input.display().to_string(),
        "--out",
        &forward.display().to_string(),
    ]);
    assert_eq!(code, Some(0));
    let (code, _, _) = run(&[
        "dft",
        "--in",
        &forward.display().to_string(),
        "--out",
        &back.display().to_string(),
        "--inverse",
    ]);
    assert_eq!(code, Some(0));

    let orig = hyperalg::io::read_samples_csv(&input).unwrap();
    let rec = hyperalg::io::read_samples_csv(&back).unwrap();
    for (a, b) in orig.iter().zip(&rec) {
        assert!((a.clone() - b.clone()).max_abs() < 1e-12);
    }

    // psi samples fed to the Phi transform are a domain error.
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "index,a,b,c,d\n0,1,1,0,0\n").unwrap();
    let (code, _, _) = run(&[
        "dft",
        "--in",
        &bad.display().to_string(),
        "--out",
        &forward.display().to_string(),
    ]);
    assert_eq!(code, Some(1));
}

#[test]
fn couple_is_deterministic_per_seed() {
    let args = ["couple", "--delta", "1.0", "--samples", "500", "--seed", "42", "--output", "json"];
    let (code, first, _) = run(&args);
    assert_eq!(code, Some(0));
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(
        v["counts"][0].as_u64().unwrap() + v["counts"][1].as_u64().unwrap(),
        500
    );
}

#[test]
fn schrodinger_grid_too_coarse() {
    let (code, _, err) = run(&["schrodinger", "--grid", "2"]);
    assert_eq!(code, Some(1));
    assert!(!err.is_empty());
}

#[test]
fn repl_session_with_last_result() {
    let mut child = bin()
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all("i*j\n_*_\n1/0\nquit\n".as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    // i*j = -k, then _*_ = (-k)(-k) = k. The division error is reported
    // but does not end the session.
    assert!(stdout.contains("\u{03a9}> "), "prompt missing: {stdout}");
    assert!(stdout.contains("-k\n"), "stdout was: {stdout}");
    assert!(stdout.contains("\nk\n") || stdout.contains("> k\n"), "stdout was: {stdout}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("singular"));
}
