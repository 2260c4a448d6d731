use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"))
}

fn logdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logdiv")).args(args).env_remove("LOGDIV_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn analyze_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = logdiv(&["analyze", corpus("ex42").to_str().unwrap(), "--report", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().next(), Some("ex42: lct FAILS [F2, F3]"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["verdicts"]["lct"]["value"], "FAILS");
    assert_eq!(report["verdicts"]["linear_free"]["value"], true);
    assert_eq!(report["points"][1]["rank_atilde"], 3);
}

#[test]
fn analyze_prints_json_without_report_flag() {
    let o = logdiv(&["analyze", corpus("normal_crossing_2d").to_str().unwrap()]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdicts"]["lct"]["value"], "HOLDS");
    assert_eq!(report["verdicts"]["lct"]["reasons"][0], "H1");
}

#[test]
fn reports_are_identical_modulo_timing() {
    let run = || {
        let o = logdiv(&["analyze", corpus("four_lines").to_str().unwrap()]);
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["timing_ms"] = 0.into();
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn check_basis_fitting_and_seh() {
    let o = logdiv(&["check-basis", corpus("curve_r32b").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("cofactor: 16*x + 20*y"));

    let o = logdiv(&["fitting", corpus("ex42").to_str().unwrap(), "--level", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "I_1: [x, y, z, t, u]  dim D_0 = 0\nĨ_1: [1]  dim D̃_0 = -1\n");

    let o = logdiv(&["seh", corpus("ex42").to_str().unwrap(), "--point", "(0,0,1,0,1)"]);
    assert_eq!(stdout(&o), "seh: false\nrank A: 3\nrank Ã: 3\n");
    let o = logdiv(&["seh", corpus("ex42").to_str().unwrap(), "--point", "(1,1,1,1,1)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("PointNotOnDivisor"));
}

#[test]
fn jordan_and_gb() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", r#"{"matrix": [[1, 1], [0, "1"]]}"#);
    let o = logdiv(&["jordan", "--matrix", m.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "S:\n  [1, 0]\n  [0, 1]\nN:\n  [0, 1]\n  [0, 0]\n");

    let i = write(dir.path(), "i.json", r#"{"variables": ["x", "y"], "generators": ["x^2 - y", "x*y - 1"]}"#);
    let o = logdiv(&["gb", i.to_str().unwrap(), "--order", "lex"]);
    assert!(o.status.success(), "{}", stderr(&o));
    // printed in the canonical (degrevlex) term order
    assert_eq!(stdout(&o), "-y^2 + x\ny^3 - 1\n");
    let o = logdiv(&["gb", i.to_str().unwrap(), "--order", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(dir.path(), "dup.json", r#"{"variables": ["x", "x"], "f": "x"}"#);
    let o = logdiv(&["analyze", dup.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: SchemaError: variables"));

    let o = logdiv(&["analyze", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("IoError"));

    let o = Command::new(env!("CARGO_BIN_EXE_logdiv"))
        .args(["analyze", corpus("four_lines").to_str().unwrap()])
        .env("LOGDIV_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("BudgetExceeded"));

    let o = Command::new(env!("CARGO_BIN_EXE_logdiv"))
        .args(["analyze", corpus("four_lines").to_str().unwrap()])
        .env("LOGDIV_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
