//! Numerical realizations: CR maps into matrix groups, adjoint-orbit
//! sampling, and the explicit quadric models the orbits land on.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::LieAlgebra3;
use crate::expm::expm;
use crate::line::ComplexLine;
use crate::tol;
use crate::{C64, Vec3c, Vec3r};

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("matrices do not represent the algebra (commutator residual {residual:.3e})")]
    NotAHomomorphism { residual: f64 },
    #[error("algebra carries no matrix representation")]
    NoRepresentation,
    #[error("kernel vector must be nonzero")]
    ZeroVector,
    #[error("unknown quadric model {name:?}")]
    UnknownModel { name: String },
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

/// Residual of the defining equation of a CR map at the identity:
/// `‖ρ'(L) u‖ / ‖u‖`, where `ρ'` is the complex-linear extension of the
/// candidate representation `ρ` and `u` spans the holomorphic direction.
///
/// The matrices are first checked to satisfy the algebra's commutation
/// relations; a tuple that fails that check cannot define a map of the
/// group at all.
pub fn cr_map_residual(
    alg: &LieAlgebra3,
    line: &ComplexLine,
    rho: &[DMatrix<C64>; 3],
    u: &DVector<C64>,
) -> Result<f64, RealizeError> {
    let scale = rho.iter().map(|m| m.norm()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let mut expected = DMatrix::<C64>::zeros(rho[0].nrows(), rho[0].ncols());
            for k in 0..3 {
                expected += &rho[k] * C64::new(alg.structure_constant(k, i, j), 0.0);
            }
            let commutator = &rho[i] * &rho[j] - &rho[j] * &rho[i];
            worst = worst.max((commutator - expected).norm());
        }
    }
    if worst > tol::HOMOMORPHISM_TOL * (1.0 + scale * scale) {
        return Err(RealizeError::NotAHomomorphism { residual: worst });
    }
    let un = u.norm();
    if un <= tol::EXACT_TOL {
        return Err(RealizeError::ZeroVector);
    }
    let rep = line.representative();
    let mut m = DMatrix::<C64>::zeros(rho[0].nrows(), rho[0].ncols());
    for k in 0..3 {
        m += &rho[k] * rep[k];
    }
    Ok((m * u).norm() / un)
}

/// Vector spanning the numerical kernel of `m` (its smallest right
/// singular direction).
pub fn nullspace_vector(m: &DMatrix<C64>) -> DVector<C64> {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("singular vectors requested");
    let last = vt.nrows() - 1;
    DVector::from_fn(n, |i, _| vt[(last, i)].conj())
}

/// A batch of adjoint-orbit samples of a line.
#[derive(Debug, Clone)]
pub struct OrbitSample {
    /// The random algebra elements whose exponentials acted.
    pub params: Vec<Vec3r>,
    /// Orbit points in algebra coordinates (re-expressed through the
    /// representation).
    pub points: Vec<Vec3c>,
    /// Affine chart `(x₀/x₂, x₁/x₂)` of each point, where defined.
    pub affine: Vec<Option<[C64; 2]>>,
    /// Conjugation invariant `tr(M M̄) / |tr M²|`, when the representation
    /// admits one (2×2 only; `None` when `tr M² ≈ 0`).
    pub mu: Option<f64>,
    /// Spread (max − min) of the invariant across samples.
    pub mu_spread: f64,
    pub residual_max: f64,
    pub residual_mean: f64,
}

fn rep_matrix_of_line(alg: &LieAlgebra3, line: &ComplexLine) -> Result<DMatrix<C64>, RealizeError> {
    let rep = alg.rep().ok_or(RealizeError::NoRepresentation)?;
    let rep0 = &rep[0];
    let mut m = DMatrix::<C64>::zeros(rep0.nrows(), rep0.ncols());
    let coords = line.representative();
    for k in 0..3 {
        m += &rep[k] * coords[k];
    }
    Ok(m)
}

fn vectorize(m: &DMatrix<C64>) -> DVector<C64> {
    DVector::from_iterator(m.len(), m.iter().copied())
}

/// Which conjugation invariant a representation supports: split real forms
/// pair `M` with its entrywise conjugate (conjugation by real matrices
/// commutes with it), compact ones with its adjoint (conjugation is
/// unitary).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MuStyle {
    RealRep,
    AntiHermitian,
}

fn mu_style(rep: &[DMatrix<C64>]) -> Option<MuStyle> {
    if rep[0].nrows() != 2 {
        return None;
    }
    if rep
        .iter()
        .all(|m| m.iter().all(|z| z.im.abs() < tol::EXACT_TOL))
    {
        return Some(MuStyle::RealRep);
    }
    if rep.iter().all(|m| (m.adjoint() + m).norm() < tol::EXACT_TOL) {
        return Some(MuStyle::AntiHermitian);
    }
    None
}

/// Per-sample conjugation invariant: `tr(M M̄) / |tr M²|` for a real
/// representation (entrywise conjugate), `tr(M M†) / |tr M²|` for an
/// anti-Hermitian one. Undefined when `tr M²` vanishes.
fn mu_invariant(m: &DMatrix<C64>, style: MuStyle) -> Option<f64> {
    let num = match style {
        MuStyle::RealRep => (m * m.map(|z| z.conj())).trace().re,
        MuStyle::AntiHermitian => m.norm_squared(),
    };
    let den = (m * m).trace().norm();
    if den <= tol::EXACT_TOL * (1.0 + m.norm_squared()) {
        return None;
    }
    Some(num / den)
}

/// Samples the adjoint orbit of a line: conjugates its representative
/// matrix by `exp(ρ(X))` for random `X` and re-expresses the result in
/// algebra coordinates by least squares, reporting the re-expression
/// residual (which vanishes exactly when the orbit stays in the algebra,
/// i.e. always for an actual representation).
pub fn adjoint_orbit_sample(
    alg: &LieAlgebra3,
    line: &ComplexLine,
    samples: usize,
    seed: u64,
) -> Result<OrbitSample, RealizeError> {
    let rep = alg.rep().ok_or(RealizeError::NoRepresentation)?;
    let m0 = rep_matrix_of_line(alg, line)?;
    let v = {
        let cols: Vec<DVector<C64>> = rep.iter().map(vectorize).collect();
        DMatrix::from_columns(&cols)
    };
    let vtv = v.ad_mul(&v);
    let style = mu_style(rep);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut out = OrbitSample {
        params: Vec::with_capacity(samples),
        points: Vec::with_capacity(samples),
        affine: Vec::with_capacity(samples),
        mu: None,
        mu_spread: 0.0,
        residual_max: 0.0,
        residual_mean: 0.0,
    };
    let mut mus: Vec<f64> = Vec::new();
    for _ in 0..samples {
        let mut x = Vec3r::new(
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        );
        if x.norm() > 3.0 {
            x *= 3.0 / x.norm();
        }
        let xrep = {
            let mut s = DMatrix::<C64>::zeros(m0.nrows(), m0.ncols());
            for k in 0..3 {
                s += &rep[k] * C64::new(x[k], 0.0);
            }
            s
        };
        let g = expm(&xrep);
        let ginv = expm(&(-&xrep));
        let mg = &g * &m0 * &ginv;
        let rhs = v.ad_mul(&vectorize(&mg));
        let sol = vtv
            .clone()
            .lu()
            .solve(&rhs)
            .expect("representation matrices are linearly independent");
        let coords = Vec3c::new(sol[0], sol[1], sol[2]);
        let reconstructed = {
            let mut s = DMatrix::<C64>::zeros(m0.nrows(), m0.ncols());
            for k in 0..3 {
                s += &rep[k] * coords[k];
            }
            s
        };
        let residual = (&reconstructed - &mg).norm() / mg.norm();
        out.residual_max = out.residual_max.max(residual);
        out.residual_mean += residual / samples as f64;
        out.affine.push(if coords[2].norm() > 1e-12 {
            Some([coords[0] / coords[2], coords[1] / coords[2]])
        } else {
            None
        });
        if let Some(mu) = style.and_then(|s| mu_invariant(&mg, s)) {
            mus.push(mu);
        }
        out.params.push(x);
        out.points.push(coords);
    }
    if !mus.is_empty() && mus.len() == samples {
        let (lo, hi) = mus
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &m| {
                (l.min(m), h.max(m))
            });
        out.mu = Some(mus.iter().sum::<f64>() / mus.len() as f64);
        out.mu_spread = hi - lo;
    }
    Ok(out)
}

/// The explicit quadric hypersurfaces in `ℂ²` realized by the builtin
/// orbits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadricModel {
    /// `Im(z₁ z̄₂) = 1` — the spherical elliptic orbit of `sl2r`.
    Sl2EllipticSpherical,
    /// `Im z₁ = |z₂|²` — the Heisenberg paraboloid.
    Heis,
    /// `(Im z₁)² + (Im z₂)² = 1` — the tube over the circle for `e2`.
    E2,
    /// `|z₁|² + |z₂|² = 1` — the round sphere for `su2`.
    Su2Sphere,
}

impl fmt::Display for QuadricModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadricModel::Sl2EllipticSpherical => "sl2_elliptic_spherical",
            QuadricModel::Heis => "heis",
            QuadricModel::E2 => "e2",
            QuadricModel::Su2Sphere => "su2_sphere",
        })
    }
}

impl FromStr for QuadricModel {
    type Err = RealizeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sl2_elliptic_spherical" => Ok(QuadricModel::Sl2EllipticSpherical),
            "heis" => Ok(QuadricModel::Heis),
            "e2" => Ok(QuadricModel::E2),
            "su2_sphere" => Ok(QuadricModel::Su2Sphere),
            _ => Err(RealizeError::UnknownModel { name: s.to_string() }),
        }
    }
}

/// Absolute defect of a point from the model quadric.
pub fn quadric_residual(model: QuadricModel, p: &[C64; 2]) -> f64 {
    match model {
        QuadricModel::Sl2EllipticSpherical => ((p[0] * p[1].conj()).im - 1.0).abs(),
        QuadricModel::Heis => (p[0].im - p[1].norm_sqr()).abs(),
        QuadricModel::E2 => (p[0].im * p[0].im + p[1].im * p[1].im - 1.0).abs(),
        QuadricModel::Su2Sphere => (p[0].norm_sqr() + p[1].norm_sqr() - 1.0).abs(),
    }
}

/// Orbit of `(i, 1)` under random elements of SL(2, ℝ); every point
/// satisfies `Im(z₁ z̄₂) = 1` exactly.
pub fn sl2_elliptic_orbit(samples: usize, seed: u64) -> Vec<[C64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let g = loop {
            let g = nalgebra::Matrix2::<f64>::from_fn(|_, _| rng.gen_range(-1.0..1.0));
            if g.determinant() > 0.2 {
                break g / g.determinant().sqrt();
            }
        };
        let u = [C64::i(), C64::new(1.0, 0.0)];
        out.push([
            C64::new(g[(0, 0)], 0.0) * u[0] + C64::new(g[(0, 1)], 0.0) * u[1],
            C64::new(g[(1, 0)], 0.0) * u[0] + C64::new(g[(1, 1)], 0.0) * u[1],
        ]);
    }
    out
}

/// Orbit of `(0, 1)` under random special unitaries `exp(ρ(X))`, `X` in the
/// compact algebra; stays on the round sphere.
pub fn su2_sphere_orbit(samples: usize, seed: u64) -> Vec<[C64; 2]> {
    let alg = crate::atlas::builtin_algebra(crate::atlas::GroupTag::Su2);
    let rep = alg.rep().expect("builtin su2 carries its defining representation");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut s = DMatrix::<C64>::zeros(2, 2);
        for k in 0..3 {
            s += &rep[k] * C64::new(rng.gen_range(-1.5..1.5), 0.0);
        }
        let g = expm(&s);
        out.push([g[(0, 1)], g[(1, 1)]]);
    }
    out
}

/// A point of the Heisenberg group realized inside `ℂ²`.
#[derive(Debug, Clone, Copy)]
pub struct HeisPoint {
    /// Chart coordinates `(Z₁, Z₂)` of the matrix realization.
    pub chart: [C64; 2],
    /// Value of the defining form `|Z₂|² + 2 Im Z₁` (zero on the image).
    pub form_value: f64,
    /// Normalized group-law coordinates `(n₁, n₂)`; the reordered pair
    /// `(n₂, n₁)` sits on the paraboloid `Im z₁ = |z₂|²`.
    pub law: [C64; 2],
}

/// Unipotent matrix realization of a Heisenberg group element in
/// exponential coordinates `(x, y, z)`.
pub fn heis_rho(x: f64, y: f64, z: f64) -> DMatrix<C64> {
    let z1 = C64::new(2.0 * z - x * y, -(x * x + y * y) / 2.0);
    let z2 = C64::new(x, y);
    let mut m = DMatrix::<C64>::identity(3, 3);
    m[(0, 1)] = C64::new(-y, -x);
    m[(0, 2)] = z1;
    m[(1, 2)] = z2;
    m
}

/// Exponential-coordinate group law `(x, y, z) · (x', y', z')`.
pub fn heis_group_mul(p: [f64; 3], q: [f64; 3]) -> [f64; 3] {
    [p[0] + q[0], p[1] + q[1], p[2] + q[2] + p[0] * q[1]]
}

/// Composition in normalized law coordinates:
/// `(n₁, n₂) ∘ (m₁, m₂) = (n₁ + m₁, n₂ + m₂ + 2i n₁ m̄₁)`.
pub fn heis_law_compose(n: [C64; 2], m: [C64; 2]) -> [C64; 2] {
    [n[0] + m[0], n[1] + m[1] + 2.0 * C64::i() * n[0] * m[0].conj()]
}

/// Embeds a Heisenberg group element and reads off its chart, the value of
/// the defining form, and its normalized law coordinates.
pub fn heisenberg_embedding(x: f64, y: f64, z: f64) -> HeisPoint {
    let m = heis_rho(x, y, z);
    let chart = [m[(0, 2)], m[(1, 2)]];
    let form_value = chart[1].norm_sqr() + 2.0 * chart[0].im;
    let law = [C64::new(x, -y), -2.0 * chart[0]];
    HeisPoint { chart, form_value, law }
}

/// Batch of embedded random Heisenberg elements.
pub fn heis_embedding_samples(samples: usize, seed: u64) -> Vec<(HeisPoint, [f64; 3])> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let p = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            (heisenberg_embedding(p[0], p[1], p[2]), p)
        })
        .collect()
}

/// Min pairwise chordal distance between `[L]` and its pushes along
/// `Ad(exp(ε e_i))` — a probe that the orbit map is locally injective at
/// the line.
pub fn local_injectivity_probe(
    alg: &LieAlgebra3,
    line: &ComplexLine,
    eps: f64,
) -> Result<f64, RealizeError> {
    let mut lines = vec![line.clone()];
    for i in 0..3 {
        let ad = alg.adjoint_matrix(&crate::algebra::complexify(&crate::algebra::basis_vector(i)));
        let mut adc = DMatrix::<C64>::zeros(3, 3);
        for r in 0..3 {
            for c in 0..3 {
                adc[(r, c)] = ad[(r, c)] * eps;
            }
        }
        let t = expm(&adc);
        let rep = line.representative();
        let mut moved = Vec3c::zeros();
        for r in 0..3 {
            for c in 0..3 {
                moved[r] += t[(r, c)] * rep[c];
            }
        }
        lines.push(ComplexLine::new(moved).map_err(|_| RealizeError::ZeroVector)?);
    }
    let mut min = f64::INFINITY;
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            min = min.min(lines[i].projective_distance(&lines[j]));
        }
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{builtin_algebra, canonical_line, GroupTag};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn sl2r_certificate_is_exact() {
        let alg = builtin_algebra(GroupTag::Sl2r);
        let line = ComplexLine::new(Vec3c::new(C64::i(), c(1.0, 0.0), c(1.0, 0.0))).unwrap();
        let rho: [DMatrix<C64>; 3] = [
            alg.rep().unwrap()[0].clone(),
            alg.rep().unwrap()[1].clone(),
            alg.rep().unwrap()[2].clone(),
        ];
        let u = DVector::from_vec(vec![C64::i(), c(1.0, 0.0)]);
        let res = cr_map_residual(&alg, &line, &rho, &u).unwrap();
        assert!(res < 1e-15, "residual {res:.3e}");
    }

    #[test]
    fn heis_certificate_is_exact() {
        let alg = builtin_algebra(GroupTag::Heis);
        let line = canonical_line(GroupTag::Heis, 0.0).unwrap();
        let rho = heis_cr_rep();
        let u = DVector::from_vec(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let res = cr_map_residual(&alg, &line, &rho, &u).unwrap();
        assert!(res < 1e-15, "residual {res:.3e}");
    }

    /// The triangular representation used by the Heisenberg CR embedding.
    fn heis_cr_rep() -> [DMatrix<C64>; 3] {
        let mut a = DMatrix::<C64>::zeros(3, 3);
        a[(0, 1)] = c(0.0, -1.0);
        a[(1, 2)] = c(1.0, 0.0);
        let mut b = DMatrix::<C64>::zeros(3, 3);
        b[(0, 1)] = c(-1.0, 0.0);
        b[(1, 2)] = c(0.0, 1.0);
        let mut cc = DMatrix::<C64>::zeros(3, 3);
        cc[(0, 2)] = c(2.0, 0.0);
        [a, b, cc]
    }

    #[test]
    fn su2_certificate_via_kernel() {
        let alg = builtin_algebra(GroupTag::Su2);
        let line = canonical_line(GroupTag::Su2, 1.0).unwrap();
        let rep = alg.rep().unwrap();
        let rho: [DMatrix<C64>; 3] = [rep[0].clone(), rep[1].clone(), rep[2].clone()];
        let m = rep_matrix_of_line(&alg, &line).unwrap();
        let u = nullspace_vector(&m);
        let res = cr_map_residual(&alg, &line, &rho, &u).unwrap();
        assert!(res < 1e-14, "residual {res:.3e}");
        // the kernel of [[0,0],[2,0]] is spanned by (0, 1)
        assert!(u[0].norm() < 1e-12);
        assert!((u[1].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bad_representation_is_rejected() {
        let alg = builtin_algebra(GroupTag::Heis);
        let line = canonical_line(GroupTag::Heis, 0.0).unwrap();
        let mut rho = heis_cr_rep();
        rho[2][(0, 2)] = c(4.0, 0.0); // breaks [ρA, ρB] = ρC
        let u = DVector::from_vec(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            cr_map_residual(&alg, &line, &rho, &u),
            Err(RealizeError::NotAHomomorphism { .. })
        ));
    }

    #[test]
    fn zero_kernel_vector_is_rejected() {
        let alg = builtin_algebra(GroupTag::Sl2r);
        let line = canonical_line(GroupTag::Sl2r, 0.5).unwrap();
        let rep = alg.rep().unwrap();
        let rho: [DMatrix<C64>; 3] = [rep[0].clone(), rep[1].clone(), rep[2].clone()];
        let u = DVector::from_vec(vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            cr_map_residual(&alg, &line, &rho, &u),
            Err(RealizeError::ZeroVector)
        ));
    }

    #[test]
    fn orbit_samples_re_express_exactly() {
        for tag in GroupTag::ALL {
            let alg = builtin_algebra(tag);
            let t = match tag {
                GroupTag::Sl2r => 0.5,
                GroupTag::Su2 => 2.0,
                _ => 0.0,
            };
            let line = canonical_line(tag, t).unwrap();
            let orbit = adjoint_orbit_sample(&alg, &line, 20, 11).unwrap();
            assert!(
                orbit.residual_max < 1e-10,
                "{tag}: residual {:.3e}",
                orbit.residual_max
            );
        }
    }

    #[test]
    fn mu_is_constant_on_sl2r_orbits() {
        let alg = builtin_algebra(GroupTag::Sl2r);
        let line = canonical_line(GroupTag::Sl2r, 0.5).unwrap();
        let orbit = adjoint_orbit_sample(&alg, &line, 40, 3).unwrap();
        let mu = orbit.mu.expect("2×2 real representation has the invariant");
        assert!((mu - 17.0).abs() < 1e-8, "mu = {mu}");
        assert!(orbit.mu_spread < 1e-8);
    }

    #[test]
    fn mu_matches_su2_closed_form() {
        let alg = builtin_algebra(GroupTag::Su2);
        for t in [2.0, 3.0, 0.5] {
            let line = canonical_line(GroupTag::Su2, t).unwrap();
            let orbit = adjoint_orbit_sample(&alg, &line, 15, 5).unwrap();
            let mu = orbit.mu.expect("anti-Hermitian representation has the invariant");
            let expect = (t * t + 1.0) / (t * t - 1.0f64).abs();
            assert!((mu - expect).abs() < 1e-8, "t = {t}: {mu} vs {expect}");
        }
    }

    #[test]
    fn mu_undefined_on_the_sphere_orbit() {
        // At t = 1 the representative matrix squares to zero.
        let alg = builtin_algebra(GroupTag::Su2);
        let line = canonical_line(GroupTag::Su2, 1.0).unwrap();
        let orbit = adjoint_orbit_sample(&alg, &line, 10, 5).unwrap();
        assert!(orbit.mu.is_none());
    }

    #[test]
    fn quadric_orbits_stay_on_their_quadrics() {
        for p in sl2_elliptic_orbit(50, 17) {
            assert!(quadric_residual(QuadricModel::Sl2EllipticSpherical, &p) < 1e-10);
        }
        for p in su2_sphere_orbit(50, 17) {
            assert!(quadric_residual(QuadricModel::Su2Sphere, &p) < 1e-12);
        }
    }

    #[test]
    fn heisenberg_embedding_identities() {
        for (hp, _) in heis_embedding_samples(50, 23) {
            assert!(hp.form_value.abs() < 1e-12);
            let quadric_point = [hp.law[1], hp.law[0]];
            assert!(quadric_residual(QuadricModel::Heis, &quadric_point) < 1e-12);
        }
        // law coordinates compose by the quadric's group law
        let g = [0.7, -0.3, 0.4];
        let h = [-0.2, 0.9, -1.1];
        let gh = heis_group_mul(g, h);
        let lhs = heis_law_compose(
            heisenberg_embedding(g[0], g[1], g[2]).law,
            heisenberg_embedding(h[0], h[1], h[2]).law,
        );
        let rhs = heisenberg_embedding(gh[0], gh[1], gh[2]).law;
        assert!((lhs[0] - rhs[0]).norm() < 1e-12);
        assert!((lhs[1] - rhs[1]).norm() < 1e-12);
    }

    #[test]
    fn embedding_matrices_multiply_like_the_group() {
        let g = [0.7, -0.3, 0.4];
        let h = [-0.2, 0.9, -1.1];
        let gh = heis_group_mul(g, h);
        let prod = heis_rho(g[0], g[1], g[2]) * heis_rho(h[0], h[1], h[2]);
        let direct = heis_rho(gh[0], gh[1], gh[2]);
        assert!((prod - direct).norm() < 1e-12);
    }

    #[test]
    fn e2_orbit_lands_on_the_tube() {
        let alg = builtin_algebra(GroupTag::E2);
        let line = canonical_line(GroupTag::E2, 0.0).unwrap();
        let orbit = adjoint_orbit_sample(&alg, &line, 40, 29).unwrap();
        let mut seen = 0;
        for a in orbit.affine.iter().flatten() {
            assert!(quadric_residual(QuadricModel::E2, a) < 1e-10);
            seen += 1;
        }
        assert!(seen >= 35, "most charts defined, got {seen}");
        assert!(orbit.mu.is_none());
    }

    #[test]
    fn injectivity_probe_separates_nearby_orbit_points() {
        let alg = builtin_algebra(GroupTag::Sl2r);
        let line = canonical_line(GroupTag::Sl2r, -0.5).unwrap();
        let min = local_injectivity_probe(&alg, &line, 1e-3).unwrap();
        assert!(min > 1e-6, "min distance {min:.3e}");
    }
}
