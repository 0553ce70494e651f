use std::f64::consts::PI;
use std::process::{Command, Output};

use garnier::complex::{c, exp_ipi, C64};
use garnier::garnier::Params;
use garnier::specfun::gamma;
use serde_json::Value;

fn garnier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garnier")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn cx(v: &Value) -> C64 {
    c(v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

#[test]
fn verify_passes_on_a_seeded_tuple() {
    let o = garnier(&["verify", "--solution", "1", "--order", "6", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    assert!(r["residual"]["relative"].as_f64().unwrap() < 1e-9);
    assert_eq!(r["pass"], true);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(code(&garnier(&["expand", "--solution", "9"])), 1);
    assert_eq!(code(&garnier(&["expand", "--order", "0"])), 1);
    assert_eq!(code(&garnier(&["expand", "--params", "{not json"])), 1);
    assert_eq!(code(&garnier(&["frobnicate"])), 1);
    assert_eq!(code(&garnier(&["verify", "--tol-series", "-1"])), 1);
    assert_eq!(code(&garnier(&["limits", "--equation", "third", "--solution", "2"])), 1);
}

#[test]
fn help_exits_with_zero() {
    assert_eq!(code(&garnier(&["--help"])), 0);
}

#[test]
fn non_generic_parameters_exit_with_two() {
    let p = r#"{"alpha0":{"re":0.3,"im":0.1},"alpha1":{"re":1,"im":0},"alpha2":{"re":0.2,"im":0.3},"nu":{"re":0.1,"im":0.2},"eta":{"re":1,"im":0}}"#;
    assert_eq!(code(&garnier(&["expand", "--params", p])), 2);
}

#[test]
fn tolerance_violation_exits_with_three() {
    let o = garnier(&["verify", "--seed", "3", "--tol-series", "1e-300"]);
    assert_eq!(code(&o), 3);
    assert_eq!(report(&o)["pass"], false);
}

#[test]
fn colliding_singular_points_exit_with_four() {
    let p = r#"{"alpha0":{"re":1e-12,"im":0},"alpha1":{"re":0.3,"im":0.2},"alpha2":{"re":0.4,"im":-0.1},"nu":{"re":0.2,"im":0.1},"eta":{"re":1,"im":0}}"#;
    let o = garnier(&["monodromy-numeric", "--equation", "second", "--solution", "5", "--params", p]);
    assert_eq!(code(&o), 4, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["expand", "--solution", "3", "--seed", "11"][..],
        &["monodromy-closed", "--solution", "6", "--seed", "11"][..],
        &["compare", "--equation", "second", "--solution", "1", "--seed", "11"][..],
    ] {
        let a = garnier(args);
        let b = garnier(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("params.json");
    let o = garnier(&["sample-params", "--seed", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, garnier(&["sample-params", "--seed", "4"]).stdout);
    let v: Value = serde_json::from_slice(&written).unwrap();
    assert_eq!(v["genericity"]["ok"], true);
}

#[test]
fn params_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let sampled = report(&garnier(&["sample-params", "--seed", "9"]));
    let path = dir.path().join("p.json");
    std::fs::write(&path, sampled["params"].to_string()).unwrap();
    let a = garnier(&["expand", "--params", path.to_str().unwrap(), "--solution", "2"]);
    let b = garnier(&["expand", "--seed", "9", "--solution", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn solution_5_stokes_entry() {
    let o = garnier(&["monodromy-closed", "--solution", "5", "--seed", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    let p: Params = serde_json::from_value(r["params"].clone()).unwrap();
    let got = cx(&r["S1"]["rows"][1][0]);
    let want = c(0.0, -2.0 * PI) * exp_ipi(p.alpha1)
        / (gamma(p.nu).unwrap() * gamma(1.0 - p.nu - p.alpha1).unwrap());
    assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "{got} vs {want}");
    assert_eq!(r["identities"]["pass"], true);
}

#[test]
fn floats_are_printed_with_seventeen_digits() {
    let o = garnier(&["sample-params", "--seed", "1"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let re_line = text.lines().find(|l| l.contains("\"re\"")).unwrap();
    let mantissa = re_line.split(':').nth(1).unwrap().trim().trim_end_matches(',');
    let digits = mantissa.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
    assert_eq!(digits.len(), 17, "{re_line}");
}

#[test]
fn numeric_limit_loops_report_invariants() {
    let o = garnier(&["monodromy-numeric", "--equation", "first", "--solution", "1", "--seed", "5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    let loops = r["loops"].as_array().unwrap();
    assert_eq!(loops.len(), 4);
    assert!(loops.iter().all(|l| l["invariants"]["trace"]["re"].is_number()));
    assert!(r["max_deviation"].as_f64().unwrap() < 1e-6);
}
