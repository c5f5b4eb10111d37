use std::process::{Command, Output};

use serde_json::Value;

fn h5(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_h5")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn so6_suite_reports_seven_exact_entries() {
    let o = h5(&["verify", "--suite", "so6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 7);
    assert!(entries.iter().all(|e| e["status"] == "exact-pass"));
    assert_eq!(v["schema"], 1);
}

#[test]
fn full_report_is_well_formed_and_passes() {
    let o = h5(&["verify", "--suite", "all", "--timings"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    let ids: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for e in v["entries"].as_array().unwrap() {
        assert!(e["detail"].is_string() && e["anchor"].is_string());
    }
    assert!(v["timings_ms"].is_object());
    assert!(!v["errata"].as_array().unwrap().is_empty());
}

#[test]
fn injected_fault_is_named_and_exits_one() {
    let o = h5(&["verify", "--suite", "twistor", "--inject-fault", "twistor.abelian"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failed: Vec<&str> =
        v["entries"].as_array().unwrap().iter().filter(|e| e["status"] == "fail").map(|e| e["id"].as_str().unwrap()).collect();
    assert_eq!(failed, ["twistor.abelian"]);
}

#[test]
fn text_format_and_out_file() {
    let dir = std::env::temp_dir().join(format!("h5-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("so6.txt");
    let o = h5(&["verify", "--suite", "so6", "--format", "text", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("7 checks, 0 failed"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(h5(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(h5(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(h5(&["--help"]).status.code(), Some(0));
}

#[test]
fn construct_instanton_is_asd() {
    let o = h5(&["construct", "--phi", "inst"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["asd"], true);
    assert!(v["connection"]["phi00p"].is_array());
}

#[test]
fn construct_accepts_harmonic_polynomial_with_phit() {
    let o = h5(&["construct", "--phi", "y00p^2", "--phit", r#"[["1","0"],["0","-1"]]"#]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["asd"], true);
}

#[test]
fn construct_rejects_non_harmonic_seed() {
    let o = h5(&["construct", "--phi", "y00p*y11p"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["harmonic"], false);
    assert_eq!(v["laplacian"], "1");
}

#[test]
fn eval_eta_matches_hand_computation() {
    let o = h5(&["eval", "--object", "eta", "--point", "1,2,3,4,5", "--zeta", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let w = &json(&o)["w"];
    let re: Vec<f64> = (0..3).map(|k| w[k][0].as_f64().unwrap()).collect();
    // w0 = y00' + 2*y01', w1 = y10' + 2*y11'
    assert_eq!(re[0], 7.0);
    assert_eq!(re[1], 10.0);
}

#[test]
fn eval_objects_at_a_point() {
    for object in ["connection", "curvature"] {
        let o = h5(&["eval", "--object", object, "--point", "1,0.5,-0.25,2,0.3"]);
        assert_eq!(o.status.code(), Some(0), "{object}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(json(&o).is_object());
    }
}

fn max_abs(v: &Value) -> f64 {
    match v {
        Value::Number(n) => n.as_f64().unwrap().abs(),
        Value::Array(a) => a.iter().map(max_abs).fold(0.0, f64::max),
        Value::Object(m) => m.values().map(max_abs).fold(0.0, f64::max),
        _ => 0.0,
    }
}

#[test]
fn eval_fhplus_vanishes_for_instanton() {
    let o = h5(&["eval", "--object", "fhplus", "--point", "1,0.5,-0.25,2,0.3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(max_abs(&json(&o)["coefficients"]) < 1e-9);
}

#[test]
fn so6_verify_all_and_twistor_roundtrip() {
    let o = h5(&["so6", "verify-all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["checks"].as_array().unwrap().len(), 7);
    let o = h5(&["twistor", "roundtrip", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["samples"], 20);
}

#[test]
fn real_check_passes() {
    let o = h5(&["real", "check", "--suite", "contact-instanton"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["suite"], "realslice");
}
