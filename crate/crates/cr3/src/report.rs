//! Serializable input/output shapes: algebra description files and the
//! JSON reports emitted by the command-line tool.
//!
//! Complex numbers cross the JSON boundary as two-element arrays
//! `[re, im]`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{construct_algebra, AlgebraError, BracketRule, LieAlgebra3};
use crate::atlas::ClassificationReport;
use crate::coframe::{CartanData, StructureTriple};
use crate::line::{Regularity, RegularityReport};
use crate::realize::OrbitSample;
use crate::{C64, DMatrixC};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("representation matrix {index} has {len} entries; expected 4 (2×2) or 9 (3×3)")]
    BadRepShape { index: usize, len: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A complex number carried through JSON as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CJson(pub C64);

impl From<C64> for CJson {
    fn from(z: C64) -> Self {
        CJson(z)
    }
}

impl Serialize for CJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CJson {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pair = <[f64; 2]>::deserialize(deserializer)?;
        if !pair[0].is_finite() || !pair[1].is_finite() {
            return Err(D::Error::custom("complex entries must be finite"));
        }
        Ok(CJson(C64::new(pair[0], pair[1])))
    }
}

/// On-disk description of a Lie algebra: basis names, bracket rules, and an
/// optional matrix representation (row-major entries, 2×2 or 3×3).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub basis: [String; 3],
    pub brackets: Vec<BracketRule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<Vec<Vec<CJson>>>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra3, ReportError> {
        let rep = match &self.rep {
            None => None,
            Some(rows) => {
                let mut mats = Vec::with_capacity(rows.len());
                for (index, row) in rows.iter().enumerate() {
                    let n = match row.len() {
                        4 => 2,
                        9 => 3,
                        len => return Err(ReportError::BadRepShape { index, len }),
                    };
                    let entries: Vec<C64> = row.iter().map(|z| z.0).collect();
                    mats.push(DMatrixC::from_row_slice(n, n, &entries));
                }
                Some(mats)
            }
        };
        let names = [
            self.basis[0].as_str(),
            self.basis[1].as_str(),
            self.basis[2].as_str(),
        ];
        Ok(construct_algebra(&self.brackets, names, rep)?)
    }
}

fn regularity_name(r: Regularity) -> &'static str {
    match r {
        Regularity::Real => "real",
        Regularity::Degenerate => "degenerate",
        Regularity::Regular => "regular",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootPairJson {
    /// Affine coordinate of each root; `null` marks the point at infinity.
    pub first: Option<CJson>,
    pub second: Option<CJson>,
    pub double: bool,
}

/// The classification report: always exactly these seven fields, with
/// `null` for the ones a group or input does not define.
#[derive(Debug, Clone, Serialize)]
pub struct ClassifyOutput {
    pub regularity: String,
    pub group: Option<String>,
    #[serde(rename = "type")]
    pub orbit_type: Option<String>,
    pub root_pair: Option<RootPairJson>,
    pub distance_invariant: Option<f64>,
    pub canonical_t: Option<f64>,
    pub spherical: Option<bool>,
}

pub fn classify_output(report: &ClassificationReport) -> ClassifyOutput {
    ClassifyOutput {
        regularity: regularity_name(report.regularity.verdict).to_string(),
        group: Some(report.group.name().to_string()),
        orbit_type: Some(report.orbit_type.to_string()),
        root_pair: report.root_pair.map(|pair| RootPairJson {
            first: pair.first.affine().map(CJson),
            second: pair.second.affine().map(CJson),
            double: pair.double,
        }),
        distance_invariant: Some(report.distance_invariant),
        canonical_t: report.canonical_t,
        spherical: Some(report.spherical),
    }
}

/// Reduced report for a user-supplied algebra, where no orbit atlas exists:
/// only the regularity verdict is meaningful.
pub fn reduced_classify_output(reg: &RegularityReport) -> ClassifyOutput {
    ClassifyOutput {
        regularity: regularity_name(reg.verdict).to_string(),
        group: None,
        orbit_type: None,
        root_pair: None,
        distance_invariant: None,
        canonical_t: None,
        spherical: None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleJson {
    pub a: CJson,
    pub b: CJson,
    pub c: CJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct GaugeJson {
    pub s: f64,
    pub lambda: CJson,
    pub mu: CJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsOutput {
    pub triple: TripleJson,
    pub r: CJson,
    pub s: CJson,
    pub sigma: CJson,
    pub spherical: bool,
    pub residuals: [f64; 5],
    pub gauge: GaugeJson,
}

pub fn invariants_output(
    triple: &StructureTriple,
    data: &CartanData,
    sigma: C64,
    spherical: bool,
) -> InvariantsOutput {
    InvariantsOutput {
        triple: TripleJson {
            a: CJson(triple.a),
            b: CJson(triple.b),
            c: CJson(triple.c),
        },
        r: CJson(data.r),
        s: CJson(data.s),
        sigma: CJson(sigma),
        spherical,
        residuals: data.residual_norms,
        gauge: GaugeJson {
            s: triple.gauge.s,
            lambda: CJson(triple.gauge.lambda),
            mu: CJson(triple.gauge.mu),
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RealizeOutput {
    pub model: Option<String>,
    pub samples: usize,
    pub mu: Option<f64>,
    pub mu_spread: Option<f64>,
    pub max_residual: f64,
    /// Worst deviation of the sampled points from the model quadric, when
    /// a model applies.
    pub quadric_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[CJson; 2]>>,
}

/// Assembles the realize report from an orbit sample whose affine charts
/// are the points of interest.
pub fn orbit_realize_output(
    model: Option<String>,
    orbit: &OrbitSample,
    quadric_residual: Option<f64>,
    include_points: bool,
) -> RealizeOutput {
    let points: Vec<[CJson; 2]> = orbit
        .affine
        .iter()
        .flatten()
        .map(|p| [CJson(p[0]), CJson(p[1])])
        .collect();
    RealizeOutput {
        model,
        samples: orbit.points.len(),
        mu: orbit.mu,
        mu_spread: orbit.mu.map(|_| orbit.mu_spread),
        max_residual: orbit.residual_max,
        quadric_residual,
        points: include_points.then_some(points),
    }
}

/// Report from the explicit quadric samplers (no orbit re-expression).
pub fn quadric_realize_output(
    model: String,
    points: &[[C64; 2]],
    max_residual: f64,
    quadric_residual: f64,
    include_points: bool,
) -> RealizeOutput {
    RealizeOutput {
        model: Some(model),
        samples: points.len(),
        mu: None,
        mu_spread: None,
        max_residual,
        quadric_residual: Some(quadric_residual),
        points: include_points.then(|| {
            points
                .iter()
                .map(|p| [CJson(p[0]), CJson(p[1])])
                .collect()
        }),
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize infallibly")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{canonical_line, classify, GroupTag};

    #[test]
    fn complex_numbers_round_trip_as_pairs() {
        let z = CJson(C64::new(0.5, -2.25));
        let text = serde_json::to_string(&z).unwrap();
        assert_eq!(text, "[0.5,-2.25]");
        let back: CJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<CJson>("[1.0]").is_err());
        assert!(serde_json::from_str::<CJson>("[1.0, \"x\"]").is_err());
    }

    #[test]
    fn algebra_file_round_trip() {
        let text = r#"{
            "basis": ["X", "Y", "Z"],
            "brackets": [{"i": 0, "j": 1, "k": 2, "v": 1.0}],
            "rep": [
                [[0,0],[1,0],[0,0],  [0,0],[0,0],[0,0],  [0,0],[0,0],[0,0]],
                [[0,0],[0,0],[0,0],  [0,0],[0,0],[1,0],  [0,0],[0,0],[0,0]],
                [[0,0],[0,0],[1,0],  [0,0],[0,0],[0,0],  [0,0],[0,0],[0,0]]
            ]
        }"#;
        let file = AlgebraFile::parse(text).unwrap();
        let alg = file.to_algebra().unwrap();
        assert_eq!(alg.basis_names()[2], "Z");
        assert_eq!(alg.structure_constant(2, 0, 1), 1.0);
        assert!(alg.rep().is_some());

        let serialized = serde_json::to_string(&file).unwrap();
        let reparsed = AlgebraFile::parse(&serialized).unwrap();
        assert!(reparsed.to_algebra().is_ok());
    }

    #[test]
    fn bad_rep_shape_is_reported() {
        let text = r#"{
            "basis": ["X", "Y", "Z"],
            "brackets": [],
            "rep": [[[0,0],[1,0],[0,0]], [[0,0]], [[0,0]]]
        }"#;
        let file = AlgebraFile::parse(text).unwrap();
        assert!(matches!(
            file.to_algebra(),
            Err(ReportError::BadRepShape { index: 0, len: 3 })
        ));
    }

    #[test]
    fn classify_output_has_the_seven_fields() {
        let report =
            classify(GroupTag::Sl2r, &canonical_line(GroupTag::Sl2r, 0.5).unwrap()).unwrap();
        let out = classify_output(&report);
        let value: serde_json::Value = serde_json::from_str(&to_pretty_json(&out)).unwrap();
        let obj = value.as_object().unwrap();
        let mut keys: Vec<_> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            vec![
                "canonical_t",
                "distance_invariant",
                "group",
                "regularity",
                "root_pair",
                "spherical",
                "type"
            ]
        );
        assert_eq!(obj["group"], "sl2r");
        assert_eq!(obj["type"], "elliptic");
        assert_eq!(obj["spherical"], false);
    }
}
