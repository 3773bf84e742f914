//! Acceptance gate: one test per headline numerical claim of the crate.
//!
//! Each test prints its `PASS`/`FAIL` line with the measured numbers (visible
//! with `--nocapture`, and automatically on failure). The battery itself runs
//! once and is shared across the tests.

use std::sync::OnceLock;

use cr3::tol;
use cr3::verify::{run_battery, Check};

fn battery() -> &'static [Check] {
    static BATTERY: OnceLock<Vec<Check>> = OnceLock::new();
    BATTERY.get_or_init(|| run_battery(tol::DEFAULT_SEED))
}

fn criterion(name: &str) {
    let c = battery()
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("no battery check named {name}"));
    let verdict = if c.passed { "PASS" } else { "FAIL" };
    println!("{} {verdict}  {}", c.name, c.detail);
    assert!(c.passed, "{} failed: {}", c.name, c.detail);
}

#[test]
fn criterion_01_sl2r_sphericity_zero_set() {
    criterion("criterion-01");
}

#[test]
fn criterion_02_su2_sphericity_zero_set() {
    criterion("criterion-02");
}

#[test]
fn criterion_03_flat_and_tube_triples() {
    criterion("criterion-03");
}

#[test]
fn criterion_04_structure_equations_and_curvature_identity() {
    criterion("criterion-04");
}

#[test]
fn criterion_05_gauge_covariance() {
    criterion("criterion-05");
}

#[test]
fn criterion_06_classification_round_trip() {
    criterion("criterion-06");
}

#[test]
fn criterion_07_automorphism_invariance() {
    criterion("criterion-07");
}

#[test]
fn criterion_08_quadric_realizations() {
    criterion("criterion-08");
}

#[test]
fn criterion_09_cr_map_certificates() {
    criterion("criterion-09");
}

#[test]
fn criterion_10_invalid_input_rejection() {
    criterion("criterion-10");
}

#[test]
fn supplementary_checks_pass() {
    for c in battery().iter().filter(|c| !c.name.starts_with("criterion-")) {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        println!("{} {verdict}  {}", c.name, c.detail);
        assert!(c.passed, "{} failed: {}", c.name, c.detail);
    }
}
