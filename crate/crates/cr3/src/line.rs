//! Complex lines in the complexified algebra and the regularity trichotomy.
//!
//! A CR structure on a 3-dimensional group is encoded by a complex line
//! `[L]` in `g ⊗ C`. Writing `L = L1 + i L2`, the line is
//!
//! * **real** when `L1, L2` are linearly dependent (no plane field at all),
//! * **degenerate** when `L1, L2` are independent but `[L1, L2]` stays in
//!   their span (integrable plane field, no contact structure),
//! * **regular** otherwise — the CR case.

use nalgebra::{DMatrix, Matrix2, Matrix3};
use thiserror::Error;

use crate::algebra::LieAlgebra3;
use crate::tol;
use crate::{Vec3c, Vec3r, C64};

#[derive(Debug, Error)]
pub enum LineError {
    #[error("the zero vector does not span a complex line")]
    ZeroLine,
    #[error("line is {verdict:?}, not regular")]
    NotRegular { verdict: Regularity },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    Real,
    Degenerate,
    Regular,
}

/// A complex line `[L]` with a canonical unit representative.
///
/// The representative is normalized to unit norm with its first
/// significant coordinate rotated to positive real phase, so equality of
/// lines is equality of representatives up to round-off.
#[derive(Debug, Clone)]
pub struct ComplexLine {
    rep: Vec3c,
    l1: Vec3r,
    l2: Vec3r,
}

impl ComplexLine {
    pub fn new(v: Vec3c) -> Result<Self, LineError> {
        let norm = v.norm();
        if !norm.is_finite() || norm < f64::MIN_POSITIVE {
            return Err(LineError::ZeroLine);
        }
        let mut rep = v / C64::new(norm, 0.0);
        let lead = (0..3)
            .find(|&i| rep[i].norm() > tol::EXACT_TOL)
            .expect("unit vector has a significant coordinate");
        let phase = rep[lead] / C64::new(rep[lead].norm(), 0.0);
        rep /= phase;
        let l1 = rep.map(|z| z.re);
        let l2 = rep.map(|z| z.im);
        Ok(ComplexLine { rep, l1, l2 })
    }

    /// Builds a line from six reals `[re1, im1, re2, im2, re3, im3]`.
    pub fn from_reals(vals: [f64; 6]) -> Result<Self, LineError> {
        Self::new(Vec3c::new(
            C64::new(vals[0], vals[1]),
            C64::new(vals[2], vals[3]),
            C64::new(vals[4], vals[5]),
        ))
    }

    pub fn representative(&self) -> &Vec3c {
        &self.rep
    }

    /// Real part of the canonical representative.
    pub fn real_part(&self) -> &Vec3r {
        &self.l1
    }

    /// Imaginary part of the canonical representative.
    pub fn imag_part(&self) -> &Vec3r {
        &self.l2
    }

    /// The conjugate line `[L̄]`.
    pub fn conjugate(&self) -> ComplexLine {
        ComplexLine::new(self.rep.map(|z| z.conj())).expect("conjugate of a unit vector")
    }

    /// Fubini–Study chordal distance between the two lines
    /// (`0` for equal lines, `1` for orthogonal ones).
    ///
    /// Computed as `‖a ∧ b‖`, which by the Lagrange identity equals
    /// `√(1 − |⟨a, b⟩|²)` for unit representatives but stays accurate for
    /// nearly equal lines, where the inner-product form loses half the
    /// significant digits to cancellation.
    pub fn projective_distance(&self, other: &ComplexLine) -> f64 {
        let a = &self.rep;
        let b = &other.rep;
        let w01 = a[0] * b[1] - a[1] * b[0];
        let w02 = a[0] * b[2] - a[2] * b[0];
        let w12 = a[1] * b[2] - a[2] * b[1];
        (w01.norm_sqr() + w02.norm_sqr() + w12.norm_sqr()).sqrt().min(1.0)
    }
}

/// Outcome of the regularity test with its numerical witnesses.
#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub verdict: Regularity,
    /// `det [L1 L2 [L1, L2]]` — nonzero exactly in the regular case.
    pub det_witness: f64,
    /// Relative rank margins: smallest/largest singular value of
    /// `[L1 L2]` and of `[L1 L2 [L1, L2]]`.
    pub margins: [f64; 2],
    /// Set when a margin falls within one decade of the rank threshold,
    /// i.e. the verdict is numerically fragile.
    pub borderline: bool,
}

/// Classifies a line as real / degenerate / regular.
pub fn classify_line(alg: &LieAlgebra3, line: &ComplexLine) -> RegularityReport {
    let l1 = *line.real_part();
    let l2 = *line.imag_part();
    let span = DMatrix::<f64>::from_columns(&[
        nalgebra::DVector::from_column_slice(l1.as_slice()),
        nalgebra::DVector::from_column_slice(l2.as_slice()),
    ]);
    let sv2 = span.svd(false, false).singular_values;
    let margin2 = if sv2[0] > 0.0 { sv2[1] / sv2[0] } else { 0.0 };

    let w = alg.bracket_real(&l1, &l2);
    let full = Matrix3::from_columns(&[l1, l2, w]);
    let det_witness = full.determinant();
    let sv3 = DMatrix::from_column_slice(3, 3, full.as_slice())
        .svd(false, false)
        .singular_values;
    let margin3 = if sv3[0] > 0.0 { sv3[2] / sv3[0] } else { 0.0 };

    let verdict = if margin2 <= tol::RANK_REL_TOL {
        Regularity::Real
    } else if margin3 <= tol::RANK_REL_TOL {
        Regularity::Degenerate
    } else {
        Regularity::Regular
    };
    let near = |m: f64| {
        m > tol::RANK_REL_TOL / tol::BORDERLINE_DECADE
            && m < tol::RANK_REL_TOL * tol::BORDERLINE_DECADE
    };
    RegularityReport {
        verdict,
        det_witness,
        margins: [margin2, margin3],
        borderline: near(margin2) || near(margin3),
    }
}

/// Classifies a raw vector, rejecting the zero vector.
pub fn classify_vector(alg: &LieAlgebra3, v: Vec3c) -> Result<RegularityReport, LineError> {
    Ok(classify_line(alg, &ComplexLine::new(v)?))
}

/// Contact plane and complex structure induced by a regular line.
///
/// The plane is `D = span(L1, L2)` and the complex structure acts by
/// `J L1 = L2`, `J L2 = -L1` (so `L` spans the `-i` eigenspace of `J`).
#[derive(Debug, Clone)]
pub struct ContactFrame {
    pub l1: Vec3r,
    pub l2: Vec3r,
    /// Matrix of `J` in the basis `(L1, L2)` of the plane.
    pub j_matrix: Matrix2<f64>,
    /// `[L1, L2]` — transversal to the plane by regularity.
    pub bracket_vector: Vec3r,
}

pub fn contact_frame(alg: &LieAlgebra3, line: &ComplexLine) -> Result<ContactFrame, LineError> {
    let report = classify_line(alg, line);
    if report.verdict != Regularity::Regular {
        return Err(LineError::NotRegular {
            verdict: report.verdict,
        });
    }
    let l1 = *line.real_part();
    let l2 = *line.imag_part();
    let j_matrix = Matrix2::new(0.0, -1.0, 1.0, 0.0);
    debug_assert!((j_matrix * j_matrix + Matrix2::identity()).norm() < tol::EXACT_TOL);
    Ok(ContactFrame {
        l1,
        l2,
        j_matrix,
        bracket_vector: alg.bracket_real(&l1, &l2),
    })
}
