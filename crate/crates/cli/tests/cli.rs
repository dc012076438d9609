use std::path::PathBuf;
use std::process::Command;

use resolvitor_cli::run_with;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("resolvitor").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let (code, out, err) = run(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}"));
    (code, v)
}

fn statuses(v: &Value) -> Vec<(String, String)> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            (
                c["name"].as_str().unwrap().to_string(),
                c["status"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

fn assert_schema(v: &Value) {
    assert!(v["command"].is_string());
    assert!(v["params"].is_object());
    assert!(v["version"].is_string());
    for c in v["checks"].as_array().unwrap() {
        assert!(c["name"].is_string());
        assert!(["pass", "fail", "info"].contains(&c["status"].as_str().unwrap()));
        assert!(c["details"].is_object() || c["details"].is_array());
        if let Some(w) = c.get("window") {
            assert_eq!(w.as_array().unwrap().len(), 2);
        }
    }
}

#[test]
fn annihilation_generic_has_seven_passes() {
    let (code, v) = run_json(&["check-annihilation", "--param", "4", "--generic"]);
    assert_eq!(code, 0);
    let s = statuses(&v);
    assert_eq!(s.iter().filter(|(_, st)| st == "pass").count(), 7);
    assert_eq!(s.iter().filter(|(_, st)| st == "fail").count(), 0);
}

#[test]
fn annihilation_specialized_sequence() {
    let (code, v) = run_json(&[
        "check-annihilation",
        "--param",
        "3",
        "--f",
        "x0^2,x1*x2,x3^2,x0*x1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["params"]["generic"], Value::Bool(false));
}

#[test]
fn curve_hr_7_2() {
    let (code, v) = run_json(&["curve-hr", "--a", "7", "--b", "2"]);
    assert_eq!(code, 0);
    let h = &v["hilbert"];
    assert_eq!(h["total"], 20);
    let values: Vec<(String, u64)> = h["values"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, d)| (k.clone(), d.as_u64().unwrap()))
        .collect();
    let expected: Vec<(String, u64)> = [("2", 4), ("3", 6), ("4", 6), ("5", 4)]
        .iter()
        .map(|(k, d)| (k.to_string(), *d))
        .collect();
    assert_eq!(values, expected);
    assert_eq!(v["gap"]["gap"], 3);
}

#[test]
fn non_regular_sequence_breaks_exactness() {
    let (code, v) = run_json(&[
        "check-complex",
        "--complex",
        "CFULL",
        "--param",
        "2",
        "--f",
        "x0,x1,x0,x1",
    ]);
    assert_eq!(code, 1);
    let interior = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "interior homology")
        .unwrap();
    assert_eq!(interior["status"], "fail");
    assert!(!interior["details"]["nonzero"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn cfull_on_variables_is_exact() {
    for a in ["2", "3"] {
        let (code, _) = run_json(&["check-complex", "--param", a]);
        assert_eq!(code, 0);
    }
}

#[test]
fn quotient_ring_example() {
    let q = "x1*y2-x2*y1;x1*y3-x3*y1;x2*y3-x3*y2";
    let vars = "x1,x2,x3,y1,y2,y3";
    let f = "x1,x2-y1,x3-y2,y3";
    let (code, _) = run_json(&["check-regseq", "--vars", vars, "--f", f, "--quotient", q]);
    assert_eq!(code, 0);
    let (code, _) = run_json(&[
        "check-complex",
        "--param",
        "2",
        "--vars",
        vars,
        "--f",
        f,
        "--quotient",
        q,
        "--deg-max",
        "8",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn regseq_failure_exits_one() {
    let (code, _) = run_json(&["check-regseq", "--f", "x0,x1,x0+x1"]);
    assert_eq!(code, 1);
}

#[test]
fn curve_gap_text() {
    let (code, out, _) = run(&["curve-gap", "--a", "9", "--b", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("gap = 5"), "{out}");
    assert!(out.contains("total: 6 14 16 14 6"), "{out}");
}

#[test]
fn dual_complexes_report_h1_as_info() {
    for k in ["C2", "D2"] {
        let (code, v) = run_json(&["check-complex", "--complex", k, "--param", "3"]);
        assert_eq!(code, 0);
        let s = statuses(&v);
        assert!(s.contains(&("interior homology".to_string(), "info".to_string())));
    }
}

#[test]
fn minors_report_literal_and_block_determinant_forms() {
    let (code, v) = run_json(&["check-minors", "--param", "3"]);
    let s = statuses(&v);
    assert_eq!(code, 1);
    assert!(s.contains(&(
        "I_(a+1)(A') = (f)^(a-1)*(f1*f4-f2*f3)".into(),
        "fail".into()
    )));
    assert!(s.contains(&(
        "I_(a+1)(A') = (f)^(a-1)*(f1*f3-f2*f4)".into(),
        "pass".into()
    )));
    assert_eq!(s.iter().filter(|(_, st)| st == "fail").count(), 1);
}

#[test]
fn omega_is_diagnostic() {
    let (code, v) = run_json(&["curve-omega", "--a", "4", "--b", "1", "--deg-max", "8"]);
    assert_eq!(code, 0);
    let audit = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "twist audit A''")
        .unwrap();
    assert_eq!(audit["details"]["consistent"], false);
    assert_eq!(audit["details"]["entry_degree"], 3);
}

#[test]
fn every_command_emits_schema_valid_json() {
    let cases: &[&[&str]] = &[
        &["gen-matrices", "--param", "2"],
        &["check-annihilation", "--param", "2"],
        &["check-complex", "--param", "2", "--complex", "C1"],
        &["check-complex", "--param", "2", "--generic"],
        &["check-minors", "--param", "2"],
        &["check-regseq", "--f", "x0,x1^2"],
        &["curve-hr", "--a", "4", "--b", "1"],
        &["curve-resolution", "--a", "4", "--b", "1"],
        &["curve-gap", "--a", "4", "--b", "1"],
        &["curve-omega", "--a", "4", "--b", "1", "--deg-max", "6"],
    ];
    for args in cases {
        let (_, v) = run_json(args);
        assert_schema(&v);
        assert_eq!(v["command"], args[0]);
        assert!(v.get("timings").is_none());
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["curve-hr", "--a", "5", "--b", "2"][..],
        &["check-complex", "--param", "3", "--complex", "D2"][..],
    ] {
        let first = run(args);
        let second = run(args);
        assert_eq!(first, second);
        let mut j = args.to_vec();
        j.extend(["--json", "-"]);
        assert_eq!(run(&j), run(&j));
    }
}

#[test]
fn timings_are_opt_in() {
    let (_, v) = run_json(&["curve-gap", "--a", "4", "--b", "1", "--timings"]);
    assert!(v["timings"]["total"].is_number());
}

#[test]
fn json_file_and_text_stdout() {
    let dir = std::env::temp_dir().join(format!("resolvitor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["curve-gap", "--a", "7", "--b", "2", "--json", p]);
    assert_eq!(code, 0);
    assert!(out.contains("gap = 3"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["gap"]["gap"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["check-complex", "--param", "2", "--field", "fp:10"],
        &["check-complex", "--param", "2", "--field", "r"],
        &["check-complex", "--param", "2", "--complex", "C3"],
        &["check-complex", "--param", "1"],
        &["check-complex", "--param", "2", "--generic", "--field", "q"],
        &[
            "check-complex",
            "--param",
            "2",
            "--generic",
            "--deg-max",
            "4",
        ],
        &["check-complex", "--param", "2", "--f", "x0,x1,x2"],
        &["check-complex", "--param", "2", "--f", "x0,x1,x2,x3^2"],
        &["check-complex", "--param", "2", "--f", "x0,x1,x2,z"],
        &["check-complex", "--param", "2", "--deg-max", "-1"],
        &["check-regseq", "--f", "x0*(x1"],
        &["check-regseq", "--f", "x0+1"],
        &["curve-hr", "--a", "4", "--b", "2"],
        &["curve-hr", "--a", "5", "--b", "4"],
        &["curve-hr", "--a", "5"],
        &["gen-matrices", "--param", "2", "--matrix", "E"],
        &[
            "curve-gap",
            "--a",
            "4",
            "--b",
            "1",
            "--json",
            "/nonexistent/dir/out.json",
        ],
    ];
    for args in cases {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn errors_name_the_offending_input() {
    let (_, _, err) = run(&["check-regseq", "--f", "x0,x0*(x1"]);
    assert!(err.contains("polynomial 2"), "{err}");
    assert!(err.contains("offset 9"), "{err}");
    let (_, _, err) = run(&["check-complex", "--param", "2", "--f", "x0,x1,x2,w"]);
    assert!(err.contains("w"), "{err}");
    let (_, _, err) = run(&["check-complex", "--param", "2", "--field", "fp:10"]);
    assert!(err.contains("--field"), "{err}");
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("curve-hr"));
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_resolvitor"))
}

#[test]
fn binary_exit_codes_and_thread_variable() {
    let ok = binary()
        .args(["curve-gap", "--a", "9", "--b", "2"])
        .env("RESOLVITOR_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("gap = 5"));
    let bad = binary()
        .args(["curve-gap", "--a", "9", "--b", "2"])
        .env("RESOLVITOR_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let fail = binary()
        .args(["check-complex", "--param", "2", "--f", "x0,x1,x0,x1"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares JSON output with the stored file; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let (_, out, err) = run(&full);
    assert!(err.is_empty(), "{err}");
    let path = golden_dir().join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let stored =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out, stored, "golden {name} differs");
}

#[test]
fn golden_reports() {
    golden("gen-matrices", &["gen-matrices", "--param", "2"]);
    golden(
        "check-annihilation",
        &["check-annihilation", "--param", "2", "--generic"],
    );
    golden(
        "check-complex-fault",
        &["check-complex", "--param", "2", "--f", "x0,x1,x0,x1"],
    );
    golden(
        "check-complex-c2",
        &["check-complex", "--param", "2", "--complex", "C2"],
    );
    golden("check-minors", &["check-minors", "--param", "2"]);
    golden(
        "check-regseq",
        &[
            "check-regseq",
            "--vars",
            "x1,x2,x3,y1,y2,y3",
            "--f",
            "x1,x2-y1,x3-y2,y3",
            "--quotient",
            "x1*y2-x2*y1;x1*y3-x3*y1;x2*y3-x3*y2",
        ],
    );
    golden("curve-hr", &["curve-hr", "--a", "7", "--b", "2"]);
    golden(
        "curve-resolution",
        &["curve-resolution", "--a", "4", "--b", "1"],
    );
    golden("curve-gap", &["curve-gap", "--a", "9", "--b", "2"]);
    golden("curve-omega", &["curve-omega", "--a", "4", "--b", "1"]);
}
