//! End-to-end flows: lines through classification to JSON reports,
//! user-supplied algebra files, and orbit realizations.

use cr3::atlas::{builtin_algebra, canonical_line, canonical_triple, classify, AtlasError, GroupTag};
use cr3::coframe::{cartan_data, sphericity, CoframeError, SphericityVerdict};
use cr3::line::{classify_line, ComplexLine, Regularity};
use cr3::realize::{adjoint_orbit_sample, quadric_residual, su2_sphere_orbit, QuadricModel};
use cr3::report::{
    classify_output, invariants_output, orbit_realize_output, quadric_realize_output,
    reduced_classify_output, to_pretty_json, AlgebraFile, ReportError,
};
use cr3::{tol, C64, Vec3c};
use serde_json::Value;

fn parse(text: &str) -> Value {
    serde_json::from_str(text).expect("report output is valid JSON")
}

#[test]
fn classification_report_has_the_full_shape() {
    let line = canonical_line(GroupTag::Sl2r, 0.5).unwrap();
    let report = classify(GroupTag::Sl2r, &line).unwrap();
    let json = parse(&to_pretty_json(&classify_output(&report)));

    assert_eq!(json["regularity"], "regular");
    assert_eq!(json["group"], "sl2r");
    assert_eq!(json["type"], "elliptic");
    assert_eq!(json["spherical"], false);
    let t = json["canonical_t"].as_f64().unwrap();
    assert!((t - 0.5).abs() <= tol::ROOT_LOCATE_TOL);
    assert!(json["distance_invariant"].as_f64().unwrap() > 0.0);
    let first = json["root_pair"]["first"].as_array().unwrap();
    assert_eq!(first.len(), 2);
    assert_eq!(json["root_pair"]["double"], false);
}

#[test]
fn hyperbolic_spherical_parameter_classifies_as_such() {
    let t = 2.0 * 2.0_f64.sqrt() - 3.0;
    let line = canonical_line(GroupTag::Sl2r, t).unwrap();
    let report = classify(GroupTag::Sl2r, &line).unwrap();
    assert!(report.spherical);
    let json = parse(&to_pretty_json(&classify_output(&report)));
    assert_eq!(json["type"], "hyperbolic");
    let ct = json["canonical_t"].as_f64().unwrap();
    assert!((ct - t).abs() <= tol::ROOT_LOCATE_TOL, "round trip gave {ct}");
}

#[test]
fn generic_and_pinned_coframes_agree_on_sphericity() {
    for t in [0.3, 1.0, -0.5, 2.0 * 2.0_f64.sqrt() - 3.0] {
        let line = canonical_line(GroupTag::Sl2r, t).unwrap();
        let report = classify(GroupTag::Sl2r, &line).unwrap();
        let (_, verdict) = sphericity(&canonical_triple(GroupTag::Sl2r, t).unwrap());
        assert_eq!(
            report.spherical,
            verdict == SphericityVerdict::Spherical,
            "verdicts disagree at t = {t}"
        );
    }
}

#[test]
fn algebra_files_parse_and_classify() {
    let text = serde_json::json!({
        "basis": ["X", "Y", "Z"],
        "brackets": [{"i": 0, "j": 1, "k": 2, "v": 1.0}],
        "rep": [
            [[0,0],[1,0],[0,0], [0,0],[0,0],[0,0], [0,0],[0,0],[0,0]],
            [[0,0],[0,0],[0,0], [0,0],[0,0],[1,0], [0,0],[0,0],[0,0]],
            [[0,0],[0,0],[1,0], [0,0],[0,0],[0,0], [0,0],[0,0],[0,0]]
        ]
    })
    .to_string();
    let file = AlgebraFile::parse(&text).unwrap();
    let alg = file.to_algebra().unwrap();
    assert_eq!(alg.basis_names(), ["X", "Y", "Z"]);

    let line = ComplexLine::new(Vec3c::new(
        C64::new(1.0, 0.0),
        C64::i(),
        C64::new(0.0, 0.0),
    ))
    .unwrap();
    let reg = classify_line(&alg, &line);
    assert_eq!(reg.verdict, Regularity::Regular);

    let json = parse(&to_pretty_json(&reduced_classify_output(&reg)));
    assert_eq!(json["regularity"], "regular");
    assert!(json["group"].is_null());
    assert!(json["type"].is_null());
    assert!(json["canonical_t"].is_null());
}

#[test]
fn malformed_algebra_files_are_rejected() {
    assert!(matches!(
        AlgebraFile::parse("not json at all"),
        Err(ReportError::Json(_))
    ));

    // five entries is neither a 2×2 nor a 3×3 matrix
    let bad_shape = serde_json::json!({
        "basis": ["X", "Y", "Z"],
        "brackets": [{"i": 0, "j": 1, "k": 2, "v": 1.0}],
        "rep": [[[0,0],[1,0],[0,0],[0,0],[0,0]]]
    })
    .to_string();
    let file = AlgebraFile::parse(&bad_shape).unwrap();
    assert!(matches!(
        file.to_algebra(),
        Err(ReportError::BadRepShape { index: 0, len: 5 })
    ));

    // sl2r rules plus an extra term that breaks the Jacobi identity
    let bad_jacobi = serde_json::json!({
        "basis": ["A", "B", "C"],
        "brackets": [
            {"i": 0, "j": 1, "k": 1, "v": 2.0},
            {"i": 0, "j": 2, "k": 2, "v": -2.0},
            {"i": 1, "j": 2, "k": 0, "v": 1.0},
            {"i": 1, "j": 2, "k": 1, "v": 0.5}
        ]
    })
    .to_string();
    let file = AlgebraFile::parse(&bad_jacobi).unwrap();
    assert!(file.to_algebra().is_err());
}

#[test]
fn invariants_report_carries_curvature_and_residuals() {
    let triple = canonical_triple(GroupTag::E2, 0.0).unwrap();
    let data = cartan_data(&triple).unwrap();
    let (sig, verdict) = sphericity(&triple);
    let json = parse(&to_pretty_json(&invariants_output(
        &triple,
        &data,
        sig,
        verdict == SphericityVerdict::Spherical,
    )));

    assert_eq!(json["spherical"], false);
    let sigma_json = json["sigma"].as_array().unwrap();
    assert!((sigma_json[0].as_f64().unwrap()).abs() <= 1e-12);
    assert!((sigma_json[1].as_f64().unwrap() - 2.25).abs() <= 1e-12);
    for r in json["residuals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() <= 1e-10);
    }
    assert!(json["gauge"]["s"].as_f64().is_some());
}

#[test]
fn orbit_and_quadric_reports_expose_their_samples() {
    let alg = builtin_algebra(GroupTag::Sl2r);
    let line = canonical_line(GroupTag::Sl2r, 0.5).unwrap();
    let orbit = adjoint_orbit_sample(&alg, &line, 40, 11).unwrap();
    let json = parse(&to_pretty_json(&orbit_realize_output(None, &orbit, None, true)));
    assert_eq!(json["samples"].as_u64(), Some(40));
    let mu = json["mu"].as_f64().unwrap();
    assert!((mu - 17.0).abs() <= 1e-6, "μ = {mu}");
    assert!(json["points"].is_array());
    assert!(json["model"].is_null());

    let pts = su2_sphere_orbit(25, 7);
    let worst = pts
        .iter()
        .map(|p| quadric_residual(QuadricModel::Su2Sphere, p))
        .fold(0.0, f64::max);
    let text = to_pretty_json(&quadric_realize_output(
        "su2-sphere".into(),
        &pts,
        worst,
        worst,
        false,
    ));
    let json = parse(&text);
    assert_eq!(json["samples"].as_u64(), Some(25));
    assert!(json["quadric_residual"].as_f64().unwrap() <= 1e-10);
    assert!(!text.contains("\"points\""));
}

#[test]
fn non_classifiable_lines_surface_typed_errors() {
    // real line: every coordinate has the same phase
    let real = ComplexLine::new(Vec3c::new(
        C64::new(1.0, 1.0),
        C64::new(2.0, 2.0),
        C64::new(-0.5, -0.5),
    ))
    .unwrap();
    assert!(matches!(
        classify(GroupTag::Sl2r, &real),
        Err(AtlasError::NotRegular { verdict: Regularity::Real })
    ));

    // on heis the plane of A + iC swallows the center
    let degenerate = ComplexLine::new(Vec3c::new(
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::i(),
    ))
    .unwrap();
    assert!(matches!(
        classify(GroupTag::Heis, &degenerate),
        Err(AtlasError::Coframe(CoframeError::DegenerateContact { .. }))
    ));
}
