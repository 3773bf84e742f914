//! Adapted coframes, well-adaptation, structure triples and Cartan data.
//!
//! For a regular line `[L]` an *adapted coframe* is a pair `(θ, θ₁)` of
//! left-invariant forms with `θ` real, `θ(L) = 0`, `θ₁(L) = 0` and
//! `θ̄₁(L) = 1`. Rescaling produces a *well-adapted* coframe `(φ, φ₁)`
//! satisfying `dφ = i φ₁ ∧ φ̄₁`, and in such a coframe
//!
//! ```text
//! dφ₁ = a φ₁ ∧ φ̄₁ + b φ ∧ φ₁ + c φ ∧ φ̄₁
//! ```
//!
//! with the forced constraints `b + b̄ = 0` and `ā c = a b`. The constants
//! `(a, b, c)` determine the CR structure up to gauge; everything
//! downstream (connection coefficients, curvature, sphericity) is closed-
//! form algebra in the triple.

use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

use crate::algebra::LieAlgebra3;
use crate::line::{classify_line, ComplexLine, Regularity};
use crate::tol;
use crate::{Vec3c, Vec3r, C64};

#[derive(Debug, Error)]
pub enum CoframeError {
    #[error("coframe triple is numerically singular (|det| = {det:.3e})")]
    SingularFrame { det: f64 },
    #[error("line is {verdict:?}; an adapted coframe needs independent real and imaginary parts")]
    NotRegular { verdict: Regularity },
    #[error("input coframe is not adapted: {reason}")]
    NotAdapted { reason: String },
    #[error("contact form is degenerate on the line's plane (Levi coefficient {k:.3e})")]
    DegenerateContact { k: f64 },
    #[error("structure triple violates the forced constraints (residual {residual:.3e})")]
    Str2Violation { residual: f64 },
    #[error("{context}: residual {residual:.3e} exceeds tolerance")]
    ResidualTooLarge { context: &'static str, residual: f64 },
    #[error("gauge parameter u must be positive and finite, got {u}")]
    InvalidGauge { u: f64 },
}

/// A left-invariant complex 1-form, stored by its coefficients against the
/// dual of the algebra basis: `ω = Σ coeffs[i] ε^i` with `ε^i(e_j) = δ_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coform(Vec3c);

impl Coform {
    pub fn new(coeffs: Vec3c) -> Self {
        Coform(coeffs)
    }

    pub fn from_real(v: &Vec3r) -> Self {
        Coform(Vec3c::new(
            C64::new(v[0], 0.0),
            C64::new(v[1], 0.0),
            C64::new(v[2], 0.0),
        ))
    }

    pub fn coeffs(&self) -> &Vec3c {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> C64 {
        self.0[i]
    }

    /// Pairing `ω(x)` — complex-bilinear, no conjugation.
    pub fn eval(&self, x: &Vec3c) -> C64 {
        self.0[0] * x[0] + self.0[1] * x[1] + self.0[2] * x[2]
    }

    pub fn eval_real(&self, x: &Vec3r) -> C64 {
        self.0[0] * x[0] + self.0[1] * x[1] + self.0[2] * x[2]
    }

    /// The conjugate form `ω̄` (conjugate coefficients).
    pub fn conjugate(&self) -> Coform {
        Coform(self.0.map(|z| z.conj()))
    }

    pub fn scaled(&self, z: C64) -> Coform {
        Coform(self.0.map(|w| w * z))
    }

    pub fn plus(&self, other: &Coform) -> Coform {
        Coform(self.0 + other.0)
    }

    pub fn is_real(&self) -> bool {
        let scale = 1.0 + self.norm();
        self.0.iter().all(|z| z.im.abs() <= tol::EXACT_TOL * scale)
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

/// Expands `dω` in the 2-form basis built from a coframe.
///
/// Returns `[x01, x02, x12]` with
/// `dω = x01 f0∧f1 + x02 f0∧f2 + x12 f1∧f2` for `frame = (f0, f1, f2)`.
/// For a left-invariant form, `dω(X, Y) = -ω([X, Y])`.
pub fn d_coefficients(
    alg: &LieAlgebra3,
    omega: &Coform,
    frame: &[Coform; 3],
) -> Result<[C64; 3], CoframeError> {
    const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
    let mut rhs = Vector3::<C64>::zeros();
    for (row, (i, j)) in PAIRS.iter().enumerate() {
        rhs[row] = -omega.eval_real(&alg.bracket_basis(*i, *j));
    }
    let mut m = Matrix3::<C64>::zeros();
    for (col, (p, q)) in PAIRS.iter().enumerate() {
        for (row, (i, j)) in PAIRS.iter().enumerate() {
            m[(row, col)] = frame[*p].coeff(*i) * frame[*q].coeff(*j)
                - frame[*p].coeff(*j) * frame[*q].coeff(*i);
        }
    }
    let det = m.determinant().norm();
    let scale: f64 = frame.iter().map(|f| f.norm()).product();
    // `m` is the wedge square of the frame matrix `F`, so `det m = (det F)²`
    // while Hadamard bounds `|det F|` by the norm product; compare at the
    // right power so the guard measures the frame's relative determinant.
    if det.sqrt() <= tol::RANK_REL_TOL * (1.0 + scale) {
        return Err(CoframeError::SingularFrame { det });
    }
    let sol = m
        .lu()
        .solve(&rhs)
        .ok_or(CoframeError::SingularFrame { det })?;
    Ok([sol[0], sol[1], sol[2]])
}

/// Builds the adapted coframe `(θ, θ₁)` of a non-real line.
///
/// `θ` is the (unit, sign-normalized) real form annihilating
/// `span(L1, L2)`; `θ₁` is pinned by `θ₁(L) = 0`, `θ̄₁(L) = 1` and
/// `θ₁(e_j) = 0`, where `e_j` is the first basis vector transversal to the
/// plane. Real lines are rejected with `NotRegular`. Degenerate lines are
/// accepted — their defect is a degenerate contact form, which
/// [`well_adapt`] reports as `DegenerateContact`.
pub fn adapted_coframe(
    alg: &LieAlgebra3,
    line: &ComplexLine,
) -> Result<(Coform, Coform), CoframeError> {
    let report = classify_line(alg, line);
    if report.verdict == Regularity::Real {
        return Err(CoframeError::NotRegular {
            verdict: report.verdict,
        });
    }
    let l1 = line.real_part();
    let l2 = line.imag_part();
    let cross = l1.cross(l2);
    let n = cross.norm();
    if n <= tol::RANK_REL_TOL {
        return Err(CoframeError::NotRegular {
            verdict: Regularity::Real,
        });
    }
    let mut theta = cross / n;
    let lead = (0..3)
        .find(|&i| theta[i].abs() > tol::EXACT_TOL)
        .expect("unit vector has a significant coordinate");
    if theta[lead] < 0.0 {
        theta = -theta;
    }

    // First basis vector with a safe transversality margin; |θ_j| is the
    // (relative) volume of (L1, L2, e_j), so this is exactly the rank
    // margin of the candidate triple.
    let j = (0..3)
        .find(|&j| theta[j].abs() >= tol::TRANSVERSAL_MARGIN)
        .expect("a unit vector has a component of size at least 3^-1/2");

    let lrep = line.representative();
    let mut rows = Matrix3::<C64>::zeros();
    for col in 0..3 {
        rows[(0, col)] = lrep[col];
        rows[(1, col)] = lrep[col].conj();
        rows[(2, col)] = C64::new(if col == j { 1.0 } else { 0.0 }, 0.0);
    }
    let rhs = Vector3::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    let det = rows.determinant().norm();
    let coeffs = rows.lu().solve(&rhs).ok_or(CoframeError::SingularFrame { det })?;
    Ok((Coform::from_real(&theta), Coform::new(coeffs)))
}

/// Record of the rescaling that produced a well-adapted coframe from an
/// adapted one: `φ = s θ`, `φ₁ = λ (θ₁ + μ θ)`.
#[derive(Debug, Clone, Copy)]
pub struct GaugeRecord {
    pub s: f64,
    pub lambda: C64,
    pub mu: C64,
}

impl Default for GaugeRecord {
    fn default() -> Self {
        GaugeRecord {
            s: 1.0,
            lambda: C64::new(1.0, 0.0),
            mu: C64::new(0.0, 0.0),
        }
    }
}

/// The structure constants of a well-adapted coframe.
#[derive(Debug, Clone, Copy)]
pub struct StructureTriple {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub gauge: GaugeRecord,
}

impl StructureTriple {
    /// Builds a triple, enforcing the forced constraints
    /// `b + b̄ = 0` and `ā c = a b`.
    pub fn new(a: C64, b: C64, c: C64) -> Result<Self, CoframeError> {
        Self::with_gauge(a, b, c, GaugeRecord::default())
    }

    pub fn with_gauge(
        a: C64,
        b: C64,
        c: C64,
        gauge: GaugeRecord,
    ) -> Result<Self, CoframeError> {
        let t = StructureTriple { a, b, c, gauge };
        let residual = t.str2_residual();
        if residual > tol::RESIDUAL_TOL {
            return Err(CoframeError::Str2Violation { residual });
        }
        Ok(t)
    }

    /// Relative residual of the forced constraints.
    pub fn str2_residual(&self) -> f64 {
        let r1 = (self.b + self.b.conj()).norm() / (1.0 + self.b.norm());
        let r2 = (self.a.conj() * self.c - self.a * self.b).norm()
            / (1.0 + self.a.norm() * (self.b.norm() + self.c.norm()));
        r1.max(r2)
    }

    /// Natural magnitude scale of the triple, used for relative thresholds.
    pub fn scale(&self) -> f64 {
        1.0 + self.a.norm_sqr() + self.b.norm() + self.c.norm()
    }
}

/// Output of [`well_adapt`].
#[derive(Debug, Clone)]
pub struct WellAdapted {
    pub phi: Coform,
    pub phi1: Coform,
    pub triple: StructureTriple,
}

/// Rescales an adapted coframe to a well-adapted one and reads off the
/// structure triple.
///
/// Writing `dθ = i k θ₁∧θ̄₁ + w θ∧θ₁ + w̄ θ∧θ̄₁` (forced by reality of θ),
/// the well-adapted coframe is `φ = sign(k) θ`,
/// `φ₁ = sqrt|k| (θ₁ - i (w̄/k) θ)`. `k = 0` means the candidate contact
/// form is degenerate on the plane.
pub fn well_adapt(
    alg: &LieAlgebra3,
    theta: &Coform,
    theta1: &Coform,
) -> Result<WellAdapted, CoframeError> {
    if !theta.is_real() {
        return Err(CoframeError::NotAdapted {
            reason: "θ must be a real form".into(),
        });
    }
    let frame = [theta.clone(), theta1.clone(), theta1.conjugate()];
    let dtheta = d_coefficients(alg, theta, &frame)?;
    let w = dtheta[0];
    let conj_gap = (dtheta[1] - dtheta[0].conj()).norm();
    if conj_gap > tol::RESIDUAL_TOL * (1.0 + w.norm()) {
        return Err(CoframeError::NotAdapted {
            reason: format!("dθ is not conjugation-symmetric (gap {conj_gap:.3e})"),
        });
    }
    let re_gap = dtheta[2].re.abs();
    if re_gap > tol::RESIDUAL_TOL * (1.0 + dtheta[2].norm()) {
        return Err(CoframeError::NotAdapted {
            reason: format!("Levi coefficient of dθ is not purely imaginary ({re_gap:.3e})"),
        });
    }
    let k = dtheta[2].im;
    if k.abs() <= tol::DEGENERATE_TOL * (1.0 + w.norm()) {
        return Err(CoframeError::DegenerateContact { k });
    }

    let s = if k > 0.0 { 1.0 } else { -1.0 };
    let lambda = C64::new(k.abs().sqrt(), 0.0);
    let mu = -C64::i() * w.conj() / k;
    let phi = theta.scaled(C64::new(s, 0.0));
    let phi1 = theta1.plus(&theta.scaled(mu)).scaled(lambda);

    let wframe = [phi.clone(), phi1.clone(), phi1.conjugate()];
    let dphi = d_coefficients(alg, &phi, &wframe)?;
    let residual = dphi[0]
        .norm()
        .max(dphi[1].norm())
        .max((dphi[2] - C64::i()).norm());
    if residual > tol::EXACT_TOL * (1.0 + k.abs() + w.norm()) {
        return Err(CoframeError::ResidualTooLarge {
            context: "well-adapted contact equation dφ = i φ₁∧φ̄₁",
            residual,
        });
    }

    let dphi1 = d_coefficients(alg, &phi1, &wframe)?;
    let triple = StructureTriple::with_gauge(
        dphi1[2],
        dphi1[0],
        dphi1[1],
        GaugeRecord { s, lambda, mu },
    )?;
    Ok(WellAdapted { phi, phi1, triple })
}

/// Formal exterior calculus in a well-adapted coframe.
///
/// 1-forms are coefficient triples against `(φ, φ₁, φ̄₁)`; 2-forms are
/// coefficient triples against `(φ∧φ₁, φ∧φ̄₁, φ₁∧φ̄₁)`. The differential
/// is determined by `dφ = i φ₁∧φ̄₁` and
/// `dφ₁ = a φ₁∧φ̄₁ + b φ∧φ₁ + c φ∧φ̄₁`.
pub mod exterior {
    use crate::C64;

    pub type OneForm = [C64; 3];
    pub type TwoForm = [C64; 3];

    /// Differential of a constant-coefficient 1-form in the coframe of a
    /// structure triple `(a, b, c)`.
    pub fn d(a: C64, b: C64, c: C64, w: &OneForm) -> TwoForm {
        [
            w[1] * b + w[2] * c.conj(),
            w[1] * c + w[2] * b.conj(),
            w[0] * C64::i() + w[1] * a - w[2] * a.conj(),
        ]
    }

    pub fn wedge(u: &OneForm, v: &OneForm) -> TwoForm {
        [
            u[0] * v[1] - u[1] * v[0],
            u[0] * v[2] - u[2] * v[0],
            u[1] * v[2] - u[2] * v[1],
        ]
    }

    /// Conjugate of a 1-form: `φ` is real and conjugation swaps `φ₁ ↔ φ̄₁`.
    pub fn conj_one(w: &OneForm) -> OneForm {
        [w[0].conj(), w[2].conj(), w[1].conj()]
    }

    /// Conjugate of a 2-form: swaps `φ∧φ₁ ↔ φ∧φ̄₁` and negates `φ₁∧φ̄₁`.
    pub fn conj_two(t: &TwoForm) -> TwoForm {
        [t[1].conj(), t[0].conj(), -t[2].conj()]
    }

    pub fn add1(u: &OneForm, v: &OneForm) -> OneForm {
        [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
    }

    pub fn scale1(z: C64, u: &OneForm) -> OneForm {
        [z * u[0], z * u[1], z * u[2]]
    }

    pub fn sub2(u: &TwoForm, v: &TwoForm) -> TwoForm {
        [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
    }

    pub fn add2(u: &TwoForm, v: &TwoForm) -> TwoForm {
        [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
    }

    pub fn scale2(z: C64, u: &TwoForm) -> TwoForm {
        [z * u[0], z * u[1], z * u[2]]
    }

    pub fn max_abs(t: &TwoForm) -> f64 {
        t.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Connection coefficients and curvature scalars of the CR structure with
/// structure triple `(a, b, c)`, in closed form, together with the
/// residuals of the five structure equations they satisfy.
#[derive(Debug, Clone, Copy)]
pub struct CartanData {
    pub a2: C64,
    pub b2: C64,
    pub c2: C64,
    pub a3: C64,
    pub b3: C64,
    pub c3: C64,
    pub a4: C64,
    pub b4: C64,
    pub c4: C64,
    /// Curvature coefficient multiplying `φ ∧ φ̄₁` in the fourth equation.
    pub r: C64,
    /// Curvature coefficient in the fifth equation.
    pub s: C64,
    /// Max-abs coefficient of each structure-equation residual.
    pub residual_norms: [f64; 5],
}

/// Evaluates the closed-form Cartan data of a structure triple and
/// verifies the five structure equations it must satisfy.
pub fn cartan_data(t: &StructureTriple) -> Result<CartanData, CoframeError> {
    let residual = t.str2_residual();
    if residual > tol::RESIDUAL_TOL {
        return Err(CoframeError::Str2Violation { residual });
    }
    let (a, b, c) = (t.a, t.b, t.c);
    let i = C64::i();
    let na2 = a.norm_sqr();

    let a2 = i * na2 / 2.0 + 0.75 * b;
    let b2 = a.conj();
    let c2 = -a;
    let a3 = (4.0 / 3.0) * i * a * b;
    let b3 = i * na2 / 2.0 - 0.25 * b;
    let c3 = -c;
    let a4 = 0.25 * na2 * na2 + b.norm_sqr() / 16.0 + (19.0 / 12.0) * i * b * na2
        - c.norm_sqr();
    let b4 = (2.0 / 3.0) * a.conj() * b;
    let c4 = (2.0 / 3.0) * a * b.conj();
    let r = i * c * (na2 / 3.0 + 1.5 * i * b);
    let s = a.conj() * (3.0 * b.norm_sqr() + (2.0 / 3.0) * i * na2 * b);

    use exterior::*;
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let phi: OneForm = [one, zero, zero];
    let phi1: OneForm = [zero, one, zero];
    let phi1b: OneForm = [zero, zero, one];
    let p2: OneForm = [a2, b2, c2];
    let p3: OneForm = [a3, b3, c3];
    let p4: OneForm = [a4, b4, c4];
    let dd = |w: &OneForm| d(a, b, c, w);

    // dφ = i φ₁∧φ̄₁ - φ∧(φ₂+φ̄₂)
    let eq1 = sub2(
        &dd(&phi),
        &sub2(
            &scale2(i, &wedge(&phi1, &phi1b)),
            &wedge(&phi, &add1(&p2, &conj_one(&p2))),
        ),
    );
    // dφ₁ = -φ₁∧φ₂ - φ∧φ₃
    let eq2 = add2(&dd(&phi1), &add2(&wedge(&phi1, &p2), &wedge(&phi, &p3)));
    // dφ₂ = 2i φ₁∧φ̄₃ + i φ̄₁∧φ₃ - φ∧φ₄
    let eq3 = sub2(
        &dd(&p2),
        &sub2(
            &add2(
                &scale2(2.0 * i, &wedge(&phi1, &conj_one(&p3))),
                &scale2(i, &wedge(&phi1b, &p3)),
            ),
            &wedge(&phi, &p4),
        ),
    );
    // dφ₃ = -φ₁∧φ₄ - φ̄₂∧φ₃ - r φ∧φ̄₁
    let eq4 = add2(
        &dd(&p3),
        &add2(
            &add2(&wedge(&phi1, &p4), &wedge(&conj_one(&p2), &p3)),
            &scale2(r, &wedge(&phi, &phi1b)),
        ),
    );
    // dφ₄ = i φ₃∧φ̄₃ + (s φ₁ + s̄ φ̄₁)∧φ, with an optional -(φ₂+φ̄₂)∧φ₄ term
    // in the global normalization; for a well-adapted triple φ₂+φ̄₂ = 0 so
    // the two readings coincide. Both are enforced.
    let s_one: OneForm = [zero, s, s.conj()];
    let eq5_local = sub2(
        &dd(&p4),
        &add2(
            &scale2(i, &wedge(&p3, &conj_one(&p3))),
            &wedge(&s_one, &phi),
        ),
    );
    let eq5_global = add2(&eq5_local, &wedge(&add1(&p2, &conj_one(&p2)), &p4));

    let norms = [
        max_abs(&eq1),
        max_abs(&eq2),
        max_abs(&eq3),
        max_abs(&eq4),
        max_abs(&eq5_local).max(max_abs(&eq5_global)),
    ];
    let m = [a, b, c, a2, b2, c2, a3, b3, c3, a4, b4, c4, r, s]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let scale = (1.0 + m) * (1.0 + m);
    for (idx, &n) in norms.iter().enumerate() {
        if n > tol::RESIDUAL_TOL * scale {
            return Err(CoframeError::ResidualTooLarge {
                context: match idx {
                    0 => "structure equation 1",
                    1 => "structure equation 2",
                    2 => "structure equation 3",
                    3 => "structure equation 4",
                    _ => "structure equation 5",
                },
                residual: n,
            });
        }
    }
    Ok(CartanData {
        a2,
        b2,
        c2,
        a3,
        b3,
        c3,
        a4,
        b4,
        c4,
        r,
        s,
        residual_norms: norms,
    })
}

/// Gap between the two readings of the fifth structure equation (with and
/// without the `-(φ₂+φ̄₂)∧φ₄` term). Since `B₂ + C̄₂ = 0`, the combination
/// `φ₂+φ̄₂` reduces to `(3/2) Re(b) φ`, so the gap vanishes whenever `b` is
/// exactly imaginary — i.e. for every valid structure triple.
pub fn dphi4_reading_gap(t: &StructureTriple) -> f64 {
    let lead = 1.5 * t.b.re;
    let b4 = (2.0 / 3.0) * t.a.conj() * t.b;
    lead.abs() * b4.norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphericityVerdict {
    Spherical,
    Aspherical,
}

/// The sphericity obstruction `σ = c (2|a|² + 9 i b)`.
///
/// A structure is locally equivalent to the round model exactly when the
/// obstruction vanishes; the verdict compares `|σ|` against a relative
/// threshold.
pub fn sphericity(t: &StructureTriple) -> (C64, SphericityVerdict) {
    sphericity_with_threshold(t, tol::SPHERICITY_REL_TOL)
}

pub fn sphericity_with_threshold(t: &StructureTriple, rel: f64) -> (C64, SphericityVerdict) {
    let sig = sigma(t);
    let verdict = if sig.norm() <= rel * t.scale() {
        SphericityVerdict::Spherical
    } else {
        SphericityVerdict::Aspherical
    };
    (sig, verdict)
}

pub fn sigma(t: &StructureTriple) -> C64 {
    t.c * (2.0 * t.a.norm_sqr() + 9.0 * C64::i() * t.b)
}

/// Gauge freedom of a well-adapted coframe: `φ ↦ u² φ`,
/// `φ₁ ↦ u e^{iρ} φ₁` with `u > 0`. The triple transforms as
/// `(a, b, c) ↦ (e^{iρ} a / u, b / u², e^{2iρ} c / u²)`.
pub fn gauge_transform(
    t: &StructureTriple,
    rho: f64,
    u: f64,
) -> Result<StructureTriple, CoframeError> {
    if !(u > 0.0) || !u.is_finite() || !rho.is_finite() {
        return Err(CoframeError::InvalidGauge { u });
    }
    let phase = C64::new(0.0, rho).exp();
    let a = t.a * phase / u;
    let b = t.b / (u * u);
    let c = t.c * phase * phase / (u * u);
    StructureTriple::with_gauge(
        a,
        b,
        c,
        GaugeRecord {
            s: t.gauge.s * u * u,
            lambda: t.gauge.lambda * u * phase,
            mu: t.gauge.mu,
        },
    )
}
