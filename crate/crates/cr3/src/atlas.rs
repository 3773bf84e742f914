//! The four builtin unimodular groups, their canonical line families,
//! root-pair orbit classification and sphericity scans.
//!
//! Basis convention per group (brackets on the basis `(A, B, C)`):
//!
//! * `sl2r` — `[A,B] = 2B`, `[A,C] = -2C`, `[B,C] = A`
//! * `su2`  — `[A,B] = 2C`, `[B,C] = 2A`, `[C,A] = 2B`
//! * `heis` — `[A,B] = C`
//! * `e2`   — `[A,C] = -B`, `[B,C] = A`
//!
//! Each carries a faithful matrix representation used for group-level
//! computations (exponentials, adjoint orbits).

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix3};
use rand::Rng;
use thiserror::Error;

use crate::algebra::{construct_algebra, BracketRule, LieAlgebra3};
use crate::coframe::{
    adapted_coframe, sphericity, well_adapt, Coform, CoframeError, SphericityVerdict,
    StructureTriple,
};
use crate::line::{classify_line, ComplexLine, LineError, Regularity, RegularityReport};
use crate::tol;
use crate::{C64, Vec3c, Vec3r};

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("unknown group tag {name:?} (expected sl2r, su2, heis or e2)")]
    UnknownTag { name: String },
    #[error("parameter t = {t} is singular for the {tag} family")]
    SingularParameter { tag: GroupTag, t: f64 },
    #[error("line is {verdict:?}; classification needs a non-real line")]
    NotRegular { verdict: Regularity },
    #[error("root pair is real for {tag} (boundary of the classifying space)")]
    RealRoots { tag: GroupTag },
    #[error("{what} is not defined for {tag}")]
    NotApplicable { tag: GroupTag, what: &'static str },
    #[error(transparent)]
    Coframe(#[from] CoframeError),
    #[error(transparent)]
    Line(#[from] LineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupTag {
    Sl2r,
    Su2,
    Heis,
    E2,
}

impl GroupTag {
    pub const ALL: [GroupTag; 4] = [GroupTag::Sl2r, GroupTag::Su2, GroupTag::Heis, GroupTag::E2];

    pub fn name(self) -> &'static str {
        match self {
            GroupTag::Sl2r => "sl2r",
            GroupTag::Su2 => "su2",
            GroupTag::Heis => "heis",
            GroupTag::E2 => "e2",
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupTag {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sl2r" | "sl2" | "sl(2,r)" => Ok(GroupTag::Sl2r),
            "su2" | "su(2)" => Ok(GroupTag::Su2),
            "heis" | "heisenberg" | "nil3" => Ok(GroupTag::Heis),
            "e2" | "se2" | "euc2" => Ok(GroupTag::E2),
            _ => Err(AtlasError::UnknownTag { name: s.to_string() }),
        }
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rep2(entries: [[C64; 2]; 2]) -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[entries[0][0], entries[0][1], entries[1][0], entries[1][1]])
}

fn rep3(rows: [[f64; 3]; 3]) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(3, 3);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            m[(i, j)] = c(v, 0.0);
        }
    }
    m
}

/// The Lie algebra of one of the builtin groups, with its faithful matrix
/// representation attached.
pub fn builtin_algebra(tag: GroupTag) -> LieAlgebra3 {
    let (rules, rep): (Vec<BracketRule>, Vec<DMatrix<C64>>) = match tag {
        GroupTag::Sl2r => (
            vec![
                BracketRule { i: 0, j: 1, k: 1, v: 2.0 },
                BracketRule { i: 0, j: 2, k: 2, v: -2.0 },
                BracketRule { i: 1, j: 2, k: 0, v: 1.0 },
            ],
            vec![
                rep2([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]),
                rep2([[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]),
                rep2([[c(0.0, 0.0), c(0.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]),
            ],
        ),
        GroupTag::Su2 => (
            vec![
                BracketRule { i: 0, j: 1, k: 2, v: 2.0 },
                BracketRule { i: 1, j: 2, k: 0, v: 2.0 },
                BracketRule { i: 2, j: 0, k: 1, v: 2.0 },
            ],
            vec![
                rep2([[c(0.0, 1.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]]),
                rep2([[c(0.0, 0.0), c(1.0, 0.0)], [c(-1.0, 0.0), c(0.0, 0.0)]]),
                rep2([[c(0.0, 0.0), c(0.0, 1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]),
            ],
        ),
        GroupTag::Heis => (
            vec![BracketRule { i: 0, j: 1, k: 2, v: 1.0 }],
            vec![
                rep3([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
                rep3([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]),
                rep3([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
            ],
        ),
        GroupTag::E2 => (
            vec![
                BracketRule { i: 0, j: 2, k: 1, v: -1.0 },
                BracketRule { i: 1, j: 2, k: 0, v: 1.0 },
            ],
            vec![
                rep3([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
                rep3([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]),
                rep3([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
            ],
        ),
    };
    let names = match tag {
        GroupTag::Sl2r => ["A", "B", "C"],
        GroupTag::Su2 => ["A", "B", "C"],
        GroupTag::Heis => ["A", "B", "C"],
        GroupTag::E2 => ["A", "B", "C"],
    };
    construct_algebra(&rules, names, Some(rep))
        .expect("builtin structure constants satisfy the Jacobi identity")
}

fn check_parameter(tag: GroupTag, t: f64) -> Result<(), AtlasError> {
    let bad = match tag {
        GroupTag::Sl2r => t.abs() < 1e-9 || (t + 1.0).abs() < 1e-9,
        GroupTag::Su2 => t.abs() < 1e-9,
        GroupTag::Heis | GroupTag::E2 => false,
    };
    if bad || !t.is_finite() {
        return Err(AtlasError::SingularParameter { tag, t });
    }
    Ok(())
}

/// Representative of the one-parameter canonical family of lines.
///
/// * `sl2r`: `L_t = (i(1+t)/2) A + t B + C` for `t ∉ {0, -1}`;
///   `t ∈ (0, 1]` is the elliptic range, `t ∈ (-1, 0)` the hyperbolic one.
/// * `su2`: `L_t = -B - i t C` for `t ≠ 0`; `t ≥ 1` is the canonical range.
/// * `heis`: the single regular line `A + iB` (`t` ignored).
/// * `e2`: the single regular line `A + iC` (`t` ignored).
pub fn canonical_line(tag: GroupTag, t: f64) -> Result<ComplexLine, AtlasError> {
    check_parameter(tag, t)?;
    let v = match tag {
        GroupTag::Sl2r => Vec3c::new(c(0.0, (1.0 + t) / 2.0), c(t, 0.0), c(1.0, 0.0)),
        GroupTag::Su2 => Vec3c::new(c(0.0, 0.0), c(-1.0, 0.0), c(0.0, -t)),
        GroupTag::Heis => Vec3c::new(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)),
        GroupTag::E2 => Vec3c::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)),
    };
    Ok(ComplexLine::new(v)?)
}

/// Adapted coframe of the canonical line.
///
/// For `sl2r` a fixed closed-form coframe (`θ = β - t γ`,
/// `θ₁ = α - i((1+t)/2) γ`) is used so the resulting structure triples have
/// a stable, documented normalization; the other groups run through the
/// generic constructor.
pub fn canonical_coframe(tag: GroupTag, t: f64) -> Result<(Coform, Coform), AtlasError> {
    check_parameter(tag, t)?;
    match tag {
        GroupTag::Sl2r => {
            let theta = Coform::from_real(&Vec3r::new(0.0, 1.0, -t));
            let theta1 = Coform::new(Vec3c::new(
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, -(1.0 + t) / 2.0),
            ));
            Ok((theta, theta1))
        }
        _ => {
            let alg = builtin_algebra(tag);
            let line = canonical_line(tag, t)?;
            Ok(adapted_coframe(&alg, &line)?)
        }
    }
}

/// Structure triple of the canonical line, through the well-adapted coframe.
pub fn canonical_triple(tag: GroupTag, t: f64) -> Result<StructureTriple, AtlasError> {
    let alg = builtin_algebra(tag);
    let (theta, theta1) = canonical_coframe(tag, t)?;
    Ok(well_adapt(&alg, &theta, &theta1)?.triple)
}

/// Sphericity obstruction of the canonical line at parameter `t`.
pub fn sigma_of(tag: GroupTag, t: f64) -> Result<C64, AtlasError> {
    Ok(crate::coframe::sigma(&canonical_triple(tag, t)?))
}

/// A point of the complex projective line, stored as a normalized
/// homogeneous pair `[z₁ : z₂]` (unit norm, first significant coordinate
/// positive real).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPoint(pub [C64; 2]);

impl RootPoint {
    pub fn new(z1: C64, z2: C64) -> Self {
        let n = (z1.norm_sqr() + z2.norm_sqr()).sqrt();
        assert!(n > 0.0, "homogeneous coordinates must not both vanish");
        let mut p = [z1 / n, z2 / n];
        let lead = if p[0].norm() > tol::EXACT_TOL { 0 } else { 1 };
        let phase = p[lead] / p[lead].norm();
        p[0] /= phase;
        p[1] /= phase;
        RootPoint(p)
    }

    /// Affine coordinate `z₁ / z₂`, or `None` for the point at infinity.
    pub fn affine(&self) -> Option<C64> {
        if self.0[1].norm() <= tol::PROJECTIVE_TOL {
            None
        } else {
            Some(self.0[0] / self.0[1])
        }
    }

    fn sort_key(&self) -> [f64; 4] {
        [self.0[0].re, self.0[0].im, self.0[1].re, self.0[1].im]
    }

    pub fn distance(&self, other: &RootPoint) -> f64 {
        let inner = self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1];
        (1.0 - inner.norm_sqr()).max(0.0).sqrt()
    }
}

/// Unordered pair of root points, stored in a deterministic order.
#[derive(Debug, Clone, Copy)]
pub struct RootPair {
    pub first: RootPoint,
    pub second: RootPoint,
    pub double: bool,
}

impl RootPair {
    fn new(p: RootPoint, q: RootPoint, double: bool) -> Self {
        let (kp, kq) = (p.sort_key(), q.sort_key());
        let swap = kp
            .iter()
            .zip(kq.iter())
            .find_map(|(a, b)| match a.total_cmp(b) {
                std::cmp::Ordering::Less => Some(false),
                std::cmp::Ordering::Greater => Some(true),
                std::cmp::Ordering::Equal => None,
            })
            .unwrap_or(false);
        if swap {
            RootPair { first: q, second: p, double }
        } else {
            RootPair { first: p, second: q, double }
        }
    }
}

/// Roots of the homogeneous quadratic `qa ζ² + qb ζ w + qc w²` on the
/// projective line, solved with the numerically stable branch choice.
pub fn solve_homogeneous_quadratic(qa: C64, qb: C64, qc: C64) -> RootPair {
    let scale = qa.norm() + qb.norm() + qc.norm();
    assert!(scale > 0.0, "the zero polynomial has no root pair");
    let disc = qb * qb - 4.0 * qa * qc;
    if disc.norm() <= tol::DOUBLE_ROOT_TOL * scale * scale {
        if qb.norm() <= tol::DOUBLE_ROOT_TOL * scale && qa.norm() <= tol::DOUBLE_ROOT_TOL * scale {
            // Constant polynomial as a binary form: double root at infinity.
            let inf = RootPoint::new(c(1.0, 0.0), c(0.0, 0.0));
            return RootPair::new(inf, inf, true);
        }
        let p = RootPoint::new(-qb, 2.0 * qa);
        return RootPair::new(p, p, true);
    }
    let d = disc.sqrt();
    let q = if (qb + d).norm() >= (qb - d).norm() {
        -(qb + d) / 2.0
    } else {
        -(qb - d) / 2.0
    };
    let first = RootPoint::new(q, qa);
    let second = RootPoint::new(qc, q);
    RootPair::new(first, second, false)
}

/// Root pair of a line, i.e. the zero set of the characteristic quadratic
/// of its representative matrix. Defined for the semisimple groups only.
pub fn root_pair(tag: GroupTag, line: &ComplexLine) -> Result<RootPair, AtlasError> {
    let rep = line.representative();
    // Representative as a traceless 2×2 matrix [[m_a, m_b], [m_c, -m_a]].
    let (m_a, m_b, m_c) = match tag {
        GroupTag::Sl2r => (rep[0], rep[1], rep[2]),
        GroupTag::Su2 => (
            C64::i() * rep[0],
            rep[1] + C64::i() * rep[2],
            -rep[1] + C64::i() * rep[2],
        ),
        other => {
            return Err(AtlasError::NotApplicable { tag: other, what: "root-pair classification" })
        }
    };
    let pair = solve_homogeneous_quadratic(m_c, -2.0 * m_a, -m_b);
    match tag {
        GroupTag::Sl2r => {
            for p in [&pair.first, &pair.second] {
                match p.affine() {
                    None => return Err(AtlasError::RealRoots { tag }),
                    Some(z) => {
                        if z.im.abs() <= tol::HALF_PLANE_BAND * (1.0 + z.norm()) {
                            return Err(AtlasError::RealRoots { tag });
                        }
                    }
                }
            }
        }
        GroupTag::Su2 => {
            let (n1, n2) = (sphere_point(&pair.first), sphere_point(&pair.second));
            if (n1 + n2).norm() <= tol::HALF_PLANE_BAND {
                return Err(AtlasError::RealRoots { tag });
            }
        }
        _ => unreachable!(),
    }
    Ok(pair)
}

/// Hyperbolic distance in the half-plane model,
/// `d = arccosh(1 + |z-w|² / (2 |Im z| |Im w|))`. Both points must lie in
/// the same (upper or lower) half-plane for this to be the true distance.
pub fn poincare_distance(z: C64, w: C64) -> f64 {
    let num = (z - w).norm_sqr();
    let den = 2.0 * z.im.abs() * w.im.abs();
    (1.0 + num / den).acosh()
}

/// Stereographic image of a projective point on the unit sphere;
/// `[0:1] ↦ (0,0,1)` and the point at infinity `[1:0] ↦ (0,0,-1)`.
pub fn sphere_point(p: &RootPoint) -> Vec3r {
    let (z1, z2) = (p.0[0], p.0[1]);
    let n = z1.norm_sqr() + z2.norm_sqr();
    let w = z1 * z2.conj();
    Vec3r::new(2.0 * w.re, 2.0 * w.im, z2.norm_sqr() - z1.norm_sqr()) / n
}

/// Great-circle distance between the sphere images of two projective
/// points.
pub fn sphere_distance(p: &RootPoint, q: &RootPoint) -> f64 {
    let (a, b) = (sphere_point(p), sphere_point(q));
    a.cross(&b).norm().atan2(a.dot(&b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitType {
    /// Root points on the same side of the real boundary (`sl2r` with both
    /// roots in one half-plane, and every regular `su2` line).
    Elliptic,
    /// Root points separated by the real boundary (`sl2r` only).
    Hyperbolic,
    /// Groups with a single regular orbit (`heis`, `e2`).
    Unique,
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitType::Elliptic => "elliptic",
            OrbitType::Hyperbolic => "hyperbolic",
            OrbitType::Unique => "unique",
        })
    }
}

/// Full classification of a line on a builtin group.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub group: GroupTag,
    pub regularity: RegularityReport,
    pub orbit_type: OrbitType,
    pub root_pair: Option<RootPair>,
    /// Invariant distance between the root points (hyperbolic for `sl2r`,
    /// spherical for `su2`, `0` for the single-orbit groups).
    pub distance_invariant: f64,
    /// Parameter of the equivalent canonical line, when the family has one.
    pub canonical_t: Option<f64>,
    pub sigma: C64,
    pub spherical: bool,
}

/// Classifies a line on a builtin group up to automorphism and computes
/// its gauge-invariant data.
///
/// Real lines and lines with a degenerate contact plane are rejected (the
/// latter with [`CoframeError::DegenerateContact`]).
pub fn classify(tag: GroupTag, line: &ComplexLine) -> Result<ClassificationReport, AtlasError> {
    let alg = builtin_algebra(tag);
    let regularity = classify_line(&alg, line);
    if regularity.verdict == Regularity::Real {
        return Err(AtlasError::NotRegular { verdict: regularity.verdict });
    }
    let (theta, theta1) = adapted_coframe(&alg, line)?;
    let wa = well_adapt(&alg, &theta, &theta1)?;
    let (sigma, verdict) = sphericity(&wa.triple);
    let spherical = verdict == SphericityVerdict::Spherical;

    let (orbit_type, root_pair, distance_invariant, canonical_t) = match tag {
        GroupTag::Heis | GroupTag::E2 => (OrbitType::Unique, None, 0.0, None),
        GroupTag::Sl2r => {
            let pair = root_pair(tag, line)?;
            let z1 = pair.first.affine().expect("finite by the reality guard");
            let z2 = pair.second.affine().expect("finite by the reality guard");
            if z1.im * z2.im > 0.0 {
                let d = if pair.double { 0.0 } else { poincare_distance(z1, z2) };
                (OrbitType::Elliptic, Some(pair), d, Some((-d).exp()))
            } else {
                let d = poincare_distance(z1, z2.conj());
                (OrbitType::Hyperbolic, Some(pair), d, Some(-(-d).exp()))
            }
        }
        GroupTag::Su2 => {
            let pair = root_pair(tag, line)?;
            let d = if pair.double { 0.0 } else { sphere_distance(&pair.first, &pair.second) };
            (OrbitType::Elliptic, Some(pair), d, Some(1.0 / (d / 2.0).cos()))
        }
    };
    Ok(ClassificationReport {
        group: tag,
        regularity,
        orbit_type,
        root_pair,
        distance_invariant,
        canonical_t,
        sigma,
        spherical,
    })
}

/// Locates the zeros of `t ↦ |σ(t)|` for a canonical family on `[lo, hi]`.
///
/// The scan samples a grid, bisects every sign change of `Im σ` (on the
/// builtin families `σ` is purely imaginary) and additionally reports grid
/// or endpoint hits where `|σ|` already vanishes to tolerance — this is
/// what picks up even-order zeros sitting at interval endpoints. Grid
/// points with singular parameters are skipped.
pub fn scan_sphericity_zeros(
    tag: GroupTag,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<f64>, AtlasError> {
    assert!(n >= 2 && hi > lo, "need a nontrivial grid");
    let sig = |t: f64| sigma_of(tag, t).ok();
    let zero_at = |s: C64| s.norm() <= tol::ROOT_LOCATE_TOL;

    let mut samples: Vec<(f64, C64)> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = lo + (hi - lo) * (i as f64) / (n as f64);
        if let Some(s) = sig(t) {
            samples.push((t, s));
        }
    }
    let mut zeros: Vec<f64> = Vec::new();
    for &(t, s) in &samples {
        if zero_at(s) {
            zeros.push(t);
        }
    }
    for w in samples.windows(2) {
        let ((mut a, sa), (mut b, sb)) = (w[0], w[1]);
        if zero_at(sa) || zero_at(sb) || sa.im.signum() == sb.im.signum() {
            continue;
        }
        let mut fa = sa.im;
        for _ in 0..200 {
            if (b - a).abs() <= 1e-13 * (1.0 + a.abs().max(b.abs())) {
                break;
            }
            let m = 0.5 * (a + b);
            let fm = match sig(m) {
                Some(s) => s.im,
                None => break,
            };
            if fm == 0.0 {
                a = m;
                b = m;
                break;
            }
            if fa.signum() == fm.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        zeros.push(0.5 * (a + b));
    }
    zeros.sort_by(f64::total_cmp);
    zeros.dedup_by(|x, y| (*x - *y).abs() < 1e-7 * (1.0 + y.abs()));
    Ok(zeros)
}

/// Samples a random automorphism of the builtin group's Lie algebra, as a
/// real matrix acting on basis coordinates.
///
/// * `sl2r`: conjugation by a random element of GL(2, ℝ) — this includes
///   the orientation-reversing outer component.
/// * `su2`: `exp(ad_X)` for random `X` (every automorphism is inner).
/// * `heis`: the full automorphism group — GL(2) on the contact plane,
///   shears into the center, and the forced determinant action on it.
/// * `e2`: rotations/reflections scaled on the translation plane.
pub fn sample_automorphism<R: Rng + ?Sized>(tag: GroupTag, rng: &mut R) -> Matrix3<f64> {
    match tag {
        GroupTag::Sl2r => {
            let g = loop {
                let g = nalgebra::Matrix2::<f64>::from_fn(|_, _| rng.gen_range(-1.0..1.0));
                if g.determinant().abs() > 0.2 {
                    break g;
                }
            };
            let ginv = g.try_inverse().expect("determinant bounded away from zero");
            let basis = [
                nalgebra::Matrix2::new(1.0, 0.0, 0.0, -1.0),
                nalgebra::Matrix2::new(0.0, 1.0, 0.0, 0.0),
                nalgebra::Matrix2::new(0.0, 0.0, 1.0, 0.0),
            ];
            let mut t = Matrix3::zeros();
            for (j, e) in basis.iter().enumerate() {
                let m = g * e * ginv;
                t[(0, j)] = m[(0, 0)];
                t[(1, j)] = m[(0, 1)];
                t[(2, j)] = m[(1, 0)];
            }
            t
        }
        GroupTag::Su2 => {
            let alg = builtin_algebra(GroupTag::Su2);
            let x = Vec3c::new(
                c(rng.gen_range(-1.5..1.5), 0.0),
                c(rng.gen_range(-1.5..1.5), 0.0),
                c(rng.gen_range(-1.5..1.5), 0.0),
            );
            let ad = alg.adjoint_matrix(&x);
            let mut adc = DMatrix::<C64>::zeros(3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    adc[(i, j)] = ad[(i, j)];
                }
            }
            let e = crate::expm::expm(&adc);
            Matrix3::from_fn(|i, j| e[(i, j)].re)
        }
        GroupTag::Heis => {
            let t2 = loop {
                let t2 = nalgebra::Matrix2::<f64>::from_fn(|_, _| rng.gen_range(-1.0..1.0));
                if t2.determinant().abs() > 0.2 {
                    break t2;
                }
            };
            let (v0, v1) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            Matrix3::new(
                t2[(0, 0)], t2[(0, 1)], 0.0,
                t2[(1, 0)], t2[(1, 1)], 0.0,
                v0,         v1,         t2.determinant(),
            )
        }
        GroupTag::E2 => {
            let r = rng.gen_range(0.3..2.0);
            let th = rng.gen_range(0.0..std::f64::consts::TAU);
            let eps: f64 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let (cs, sn) = (th.cos(), th.sin());
            let (w0, w1) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if eps > 0.0 {
                Matrix3::new(
                    r * cs, -r * sn, w0,
                    r * sn, r * cs,  w1,
                    0.0,    0.0,     1.0,
                )
            } else {
                Matrix3::new(
                    r * cs,  r * sn, w0,
                    r * sn, -r * cs, w1,
                    0.0,     0.0,   -1.0,
                )
            }
        }
    }
}

/// Max deviation of `T` from being a Lie algebra automorphism:
/// `max_{i<j} ‖T [e_i, e_j] - [T e_i, T e_j]‖`.
pub fn automorphism_residual(alg: &LieAlgebra3, t: &Matrix3<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let lhs = t * alg.bracket_basis(i, j);
            let (ti, tj) = (t.column(i).clone_owned(), t.column(j).clone_owned());
            let rhs = alg.bracket_real(&ti, &tj);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

/// Pushes a line forward along a real linear map of the algebra.
pub fn apply_matrix_to_line(t: &Matrix3<f64>, line: &ComplexLine) -> Result<ComplexLine, LineError> {
    let rep = line.representative();
    let mut out = Vec3c::zeros();
    for i in 0..3 {
        for j in 0..3 {
            out[i] += c(t[(i, j)], 0.0) * rep[j];
        }
    }
    ComplexLine::new(out)
}
