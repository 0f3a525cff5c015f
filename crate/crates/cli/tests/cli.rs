use std::path::PathBuf;
use std::process::Command;

use braidrep::ring::{LaurentPoly, Matrix};
use braidrep::BraidWord;
use braidrep_cli::format;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn braidrep(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_braidrep")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", r.stdout))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("braidrep-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn documented_examples() {
    let r = braidrep(&["alexander", "--n", "2", "s1 s1 s1"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "{\"conway\": \"s^-2 - 1 + s^2\", \"components\": 1}\n"));
    let r = braidrep(&["verma", "dims", "--n", "3", "--m", "2", "--lambda", "7/3"]);
    assert_eq!(r.stdout, "{\"weight_dim\": 6, \"null_dim\": 3}\n");
    let v = json(&braidrep(&["braid", "--n", "3", "s1 s2^-1"]));
    assert_eq!(v["permutation"], serde_json::json!([3, 1, 2]));
    assert_eq!(v["pure"], Value::Bool(false));
    assert_eq!(v["exponent_sum"], 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["braid", "s1"][..],
        &["braid", "--n", "3", "s7"],
        &["braid", "--n", "3", "--bogus", "s1"],
        &["nonsense"],
        &["verma", "dims", "--n", "3", "--m", "2", "--lambda", "seven"],
        &["kz", "monodromy", "--n", "2", "--lambda", "1/2", "--m", "1", "--word", "s1"],
        &["ybe", "check", "/definitely/not/here.json"],
    ] {
        let r = braidrep(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(r.stdout.is_empty());
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn computation_errors_exit_one_with_json() {
    let r = braidrep(&["burau", "--n", "1", ""]);
    assert_eq!(r.code, 1);
    assert!(json(&r)["error"].as_str().unwrap().contains("2 strands"));

    let r = braidrep(&[
        "kz",
        "monodromy",
        "--n",
        "3",
        "--lambda",
        "2",
        "--m",
        "2",
        "--h",
        "0.1",
        "--nullspace",
        "--word",
        "s1",
    ]);
    assert_eq!(r.code, 1);
    assert!(json(&r)["error"].as_str().unwrap().contains("degenerate"));

    let path = scratch(
        "generic.json",
        r#"{"dim": 2, "ring": "rational", "matrix": [["1","2","0","0"],["0","1","0","3"],["5","0","1","0"],["0","0","7","1"]]}"#,
    );
    let r = braidrep(&["ybe", "rep", path.to_str().unwrap(), "--n", "2", "--word", "s1"]);
    assert_eq!(r.code, 1);
    assert!(json(&r).get("error").is_some());
    let r = braidrep(&["ybe", "rep", path.to_str().unwrap(), "--n", "2", "--word", "s1", "--allow-non-ybe"]);
    assert_eq!(r.code, 0);
}

#[test]
fn help_and_version_succeed() {
    let r = braidrep(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("alexander"));
    assert_eq!(braidrep(&["--version"]).code, 0);
}

#[test]
fn degenerate_verma_weight_warns() {
    let r = braidrep(&["verma", "dims", "--n", "2", "--m", "2", "--lambda", "1"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["degenerate"], Value::Bool(true));
    assert!(r.stderr.starts_with("warning:"));
    let r = braidrep(&["verma", "dims", "--n", "2", "--m", "2", "--lambda", "5/2"]);
    assert!(r.stderr.is_empty() && json(&r).get("degenerate").is_none());
}

#[test]
fn burau_matrix_round_trips() {
    let v = json(&braidrep(&["burau", "--n", "3", "s1 s2^-1 s1", "--reduced"]));
    let m = format::parse_laurent_matrix(&v["matrix"]).unwrap();
    let expect = braidrep::burau::reduced_burau(&BraidWord::parse("s1 s2^-1 s1", 3).unwrap()).unwrap().matrix;
    assert_eq!(m, expect);
    assert_eq!(v["strands"], 3);
    assert_eq!(v["reduced"], Value::Bool(true));
}

#[test]
fn json_word_input_matches_text_input() {
    let w = BraidWord::parse("s1 s2^-1 s1 s3", 4).unwrap();
    let text = format::word_json(&w).to_string();
    let a = braidrep(&["alexander", "--json", &text]);
    let b = braidrep(&["alexander", "--n", "4", "s1 s2^-1 s1 s3"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(braidrep(&["braid", "--json", &text, "--n", "4"]).code, 2);
}

#[test]
fn conway_output_reparses() {
    let v = json(&braidrep(&["alexander", "--n", "3", "s1 s2^-1 s1 s2^-1"]));
    let p: LaurentPoly = v["conway"].as_str().unwrap().parse().unwrap();
    assert_eq!(p, LaurentPoly::from_univariate("s", &[(-2, -1), (0, 3), (2, -1)]));
}

#[test]
fn r_matrix_show_check_rep_round_trip() {
    let shown = braidrep(&["ybe", "show", "--builtin", "rcheck"]);
    assert_eq!(shown.code, 0);
    let path = scratch("rcheck.json", &shown.stdout);
    let again = braidrep(&["ybe", "show", path.to_str().unwrap()]);
    assert_eq!(again.stdout, shown.stdout);

    let check = json(&braidrep(&["ybe", "check", path.to_str().unwrap()]));
    assert_eq!(check["braid_ybe_holds"], Value::Bool(true));
    assert_eq!(check["braid_ybe"]["nonzero_entries"], 0);
    assert_eq!(check["ring"], "laurent:q");

    let rep = |w: &str| json(&braidrep(&["ybe", "rep", path.to_str().unwrap(), "--n", "3", "--word", w]));
    let lhs = format::parse_laurent_matrix(&rep("s1 s2 s1")["matrix"]).unwrap();
    let rhs = format::parse_laurent_matrix(&rep("s2 s1 s2")["matrix"]).unwrap();
    assert_eq!(lhs, rhs);
    let cancel = format::parse_laurent_matrix(&rep("s2 s2^-1")["matrix"]).unwrap();
    assert_eq!(cancel, Matrix::identity(8));

    let flip = json(&braidrep(&["ybe", "check", "--builtin", "flip", "--dim", "3"]));
    assert_eq!(flip["dim"], 3);
    // QYBE for the flip is braid-YBE for the identity
    assert_eq!(flip["qybe_holds"], Value::Bool(true));
    let rc = json(&braidrep(&["ybe", "check", "--builtin", "rcheck"]));
    assert_eq!(rc["qybe_holds"], Value::Bool(false));
}

#[test]
fn complex_r_matrix_reports_numeric_residuals() {
    let path = scratch(
        "scalar.json",
        r#"{"dim": 2, "ring": "complex", "matrix": [[[0,1],[0,0],[0,0],[0,0]],[[0,0],[0,1],[0,0],[0,0]],[[0,0],[0,0],[0,1],[0,0]],[[0,0],[0,0],[0,0],[0,1]]]}"#,
    );
    let v = json(&braidrep(&["ybe", "check", path.to_str().unwrap()]));
    assert_eq!(v["braid_ybe"]["exact"], Value::Bool(false));
    assert_eq!(v["braid_ybe"]["max_abs"], 0.0);
    assert_eq!(v["invertible"], Value::Bool(true));
}

#[test]
fn verma_outputs_reparse() {
    let v = json(&braidrep(&["verma", "omega", "--n", "3", "--m", "1", "--lambda", "1/2", "--i", "1", "--j", "3"]));
    let m = format::parse_rational_matrix(&v["matrix"]).unwrap();
    assert_eq!(m.rows(), 3);
    assert_eq!(v["basis"].as_array().unwrap().len(), 3);

    let ns = json(&braidrep(&["verma", "nullspace", "--n", "3", "--m", "2", "--lambda", "7/3"]));
    assert_eq!(ns["dim"], 3);
    assert_eq!(ns["generic_dim"], 3);
    let basis = format::parse_rational_matrix(&ns["basis"]).unwrap();
    assert_eq!((basis.rows(), basis.cols()), (6, 3));

    let check = json(&braidrep(&["verma", "check", "--n", "3", "--m", "2", "--lambda", "-5/7"]));
    for key in ["kohno_drinfeld", "total_omega_central", "equivariance", "coproduct_casimir"] {
        assert_eq!(check[key], Value::Bool(true), "{key}");
    }
    assert_eq!(check["casimir_eigenvalue"], "-45/392");
}

#[test]
fn kz_outputs() {
    let base = ["kz", "monodromy", "--n", "2", "--lambda", "1/2", "--m", "1", "--word", "s1 s1"];
    let mut with_h = base.to_vec();
    with_h.extend(["--h", "0.1+0.05i"]);
    let v = json(&braidrep(&with_h));
    let m = format::parse_complex_matrix(&v["matrix"]).unwrap();
    assert_eq!(m.rows(), 2);
    assert!(v["est_error"].as_f64().unwrap() < 1e-6);
    assert!(v["path_length_steps"].as_u64().unwrap() > 0);

    // h = 2πi/τ
    let tau =
        2.0 * std::f64::consts::PI * num_complex::Complex64::new(0.0, 1.0) / num_complex::Complex64::new(0.1, 0.05);
    let tau_text = format!("{}{:+}i", tau.re, tau.im);
    let mut with_tau = base.to_vec();
    with_tau.extend(["--tau", &tau_text]);
    let w = json(&braidrep(&with_tau));
    let mt = format::parse_complex_matrix(&w["matrix"]).unwrap();
    for (a, b) in m.entries().iter().zip(mt.entries()) {
        assert!((a - b).norm() < 1e-9);
    }

    let r = braidrep(&["kz", "check", "--n", "3", "--lambda", "1/2", "--m", "2", "--h", "0.1+0.05i", "--points", "10"]);
    let c = json(&r);
    assert!(c["braid_residual"].as_f64().unwrap() <= 1e-6);
    assert!(c["flatness_residual"].as_f64().unwrap() <= 1e-10);
    assert!(c["homotopy_residual"].as_f64().unwrap() <= 1e-8);
    assert_eq!(
        braidrep(&["kz", "check", "--n", "3", "--lambda", "1/2", "--m", "2", "--h", "0.1+0.05i", "--points", "10"])
            .stdout,
        r.stdout
    );
}

#[test]
fn pretty_flag_changes_layout_only() {
    let plain = braidrep(&["braid", "--n", "3", "s1 s2^-1"]);
    let pretty = braidrep(&["--pretty", "braid", "--n", "3", "s1 s2^-1"]);
    assert!(pretty.stdout.contains('\n') && pretty.stdout.lines().count() > 2);
    assert_eq!(json(&plain), json(&pretty));
}

#[test]
fn selftest_is_deterministic_and_passes() {
    let a = braidrep(&["selftest", "--seed", "5", "--cases", "10"]);
    let b = braidrep(&["selftest", "--seed", "5", "--cases", "10"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["seed"], 5);
    assert!(!a.stdout.contains("time"));
}
