//! Black-box tests running the compiled `cr3` binary.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn cr3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cr3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_is_deterministic_json() {
    let first = cr3(&["classify", "--group", "sl2r", "--t", "0.5"]);
    let second = cr3(&["classify", "--group", "sl2r", "--t", "0.5"]);
    assert_eq!(first.stdout, second.stdout);

    let json = stdout_json(&first);
    assert_eq!(json["regularity"], "regular");
    assert_eq!(json["group"], "sl2r");
    assert_eq!(json["type"], "elliptic");
    assert!((json["canonical_t"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(json["spherical"], false);
}

#[test]
fn classify_accepts_an_explicit_line() {
    // the canonical sl2r line at t = 0.5: (3i/4, 1/2, 1)
    let out = cr3(&["classify", "--group", "sl2r", "--line", "0,0.75,0.5,0,1,0"]);
    let json = stdout_json(&out);
    assert_eq!(json["type"], "elliptic");
    assert!((json["canonical_t"].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn classify_text_mentions_the_orbit_type() {
    let out = cr3(&["classify", "--group", "sl2r", "--t", "-0.5", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("hyperbolic"), "got:\n{text}");
    assert!(text.contains("canonical t"), "got:\n{text}");
}

#[test]
fn unknown_group_is_a_usage_error() {
    let out = cr3(&["classify", "--group", "so3", "--t", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_parameter_is_a_usage_error() {
    let out = cr3(&["classify", "--group", "sl2r"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degenerate_line_is_a_domain_error() {
    let out = cr3(&["classify", "--group", "heis", "--line", "1,0,0,0,0,1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("degenerate"), "got: {err}");
}

#[test]
fn algebra_file_reduces_to_regularity() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    let text = serde_json::json!({
        "basis": ["X", "Y", "Z"],
        "brackets": [{"i": 0, "j": 1, "k": 2, "v": 1.0}]
    })
    .to_string();
    file.write_all(text.as_bytes()).unwrap();

    let path = file.path().to_str().unwrap();
    let out = cr3(&["classify", "--algebra-file", path, "--line", "1,0,0,1,0,0"]);
    let json = stdout_json(&out);
    assert_eq!(json["regularity"], "regular");
    assert!(json["group"].is_null());
    assert!(json["type"].is_null());
}

#[test]
fn algebra_file_without_line_is_a_usage_error() {
    let out = cr3(&["classify", "--algebra-file", "whatever.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_of_the_tube_group() {
    let out = cr3(&["invariants", "--group", "e2"]);
    let json = stdout_json(&out);
    assert_eq!(json["spherical"], false);
    let sigma = json["sigma"].as_array().unwrap();
    assert!(sigma[0].as_f64().unwrap().abs() < 1e-10);
    assert!((sigma[1].as_f64().unwrap() - 2.25).abs() < 1e-10);
    for r in json["residuals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn realize_su2_sphere_checks_its_quadric() {
    let out = cr3(&[
        "realize", "--group", "su2", "--t", "1", "--samples", "20", "--seed", "3",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["model"], "su2-sphere");
    assert_eq!(json["samples"].as_u64(), Some(20));
    assert!(json["quadric_residual"].as_f64().unwrap() < 1e-10);
    assert!(json.get("points").is_none());

    let with_points = cr3(&[
        "realize", "--group", "su2", "--t", "1", "--samples", "20", "--seed", "3", "--points",
    ]);
    let json = stdout_json(&with_points);
    assert_eq!(json["points"].as_array().unwrap().len(), 20);
}

#[test]
fn realize_generic_sl2r_reports_the_trace_invariant() {
    let out = cr3(&[
        "realize", "--group", "sl2r", "--t", "0.5", "--samples", "30", "--seed", "5",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["model"], "adjoint-orbit");
    assert!((json["mu"].as_f64().unwrap() - 17.0).abs() < 1e-6);
    assert!(json["max_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn realize_heisenberg_paraboloid() {
    let out = cr3(&["realize", "--group", "heis", "--samples", "15"]);
    let json = stdout_json(&out);
    assert_eq!(json["model"], "heisenberg-paraboloid");
    assert!(json["quadric_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn verify_reports_every_criterion() {
    let out = cr3(&["verify"]);
    assert!(
        out.status.success(),
        "battery failed:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    for i in 1..=10 {
        let name = format!("criterion-{i:02}");
        assert!(text.contains(&name), "missing {name} in:\n{text}");
    }
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"), "got:\n{text}");
}
