//! Three-dimensional real Lie algebras from structure constants.
//!
//! An algebra is stored as the dense tensor `c[k][i][j]` with
//! `[e_i, e_j] = Σ_k c[k][i][j] e_k`, together with basis labels and an
//! optional faithful matrix representation (2x2 or 3x3, complex entries).
//! Construction validates antisymmetry, the Jacobi identity and — when a
//! representation is supplied — that matrix commutators reproduce the
//! bracket table.

use nalgebra::{DMatrix, Matrix3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expm::expm;
use crate::tol;
use crate::{Vec3c, Vec3r, C64};

/// One sparse bracket rule: `[e_i, e_j] += v * e_k`.
///
/// The antisymmetric counterpart `[e_j, e_i] -= v * e_k` is implied and
/// filled in automatically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketRule {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub v: f64,
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("bracket rule index out of range: ({i}, {j}, {k}) with only 3 basis vectors")]
    BadIndex { i: usize, j: usize, k: usize },
    #[error("antisymmetry violated at (i={i}, j={j}): residual {residual:.3e}")]
    AntisymmetryViolation { i: usize, j: usize, residual: f64 },
    #[error("Jacobi identity fails on (e{i}, e{j}, e{k}): residual {residual:.3e}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: f64,
    },
    #[error("matrix representation mismatches bracket of (e{i}, e{j}): residual {residual:.3e}")]
    RepMismatch { i: usize, j: usize, residual: f64 },
    #[error("representation matrices must be three square complex matrices of equal size 2 or 3")]
    BadRep,
    #[error("operation requires a matrix representation, but none is attached")]
    NoRepresentation,
}

/// A validated three-dimensional Lie algebra.
#[derive(Debug, Clone)]
pub struct LieAlgebra3 {
    basis_names: [String; 3],
    /// `c[k][i][j]`: coefficient of `e_k` in `[e_i, e_j]`.
    c: [[[f64; 3]; 3]; 3],
    rep: Option<Vec<DMatrix<C64>>>,
}

/// Builds an algebra from sparse bracket rules.
///
/// Rules accumulate: two rules for the same `(i, j, k)` add up. A rule with
/// `i == j` and a nonzero value is an antisymmetry violation.
pub fn construct_algebra(
    rules: &[BracketRule],
    basis_names: [&str; 3],
    rep: Option<Vec<DMatrix<C64>>>,
) -> Result<LieAlgebra3, AlgebraError> {
    let mut c = [[[0.0f64; 3]; 3]; 3];
    for r in rules {
        if r.i > 2 || r.j > 2 || r.k > 2 {
            return Err(AlgebraError::BadIndex {
                i: r.i,
                j: r.j,
                k: r.k,
            });
        }
        if r.i == r.j {
            if r.v != 0.0 {
                return Err(AlgebraError::AntisymmetryViolation {
                    i: r.i,
                    j: r.j,
                    residual: r.v.abs(),
                });
            }
            continue;
        }
        c[r.k][r.i][r.j] += r.v;
        c[r.k][r.j][r.i] -= r.v;
    }
    LieAlgebra3::from_structure_constants(c, basis_names, rep)
}

impl LieAlgebra3 {
    /// Builds an algebra from dense structure constants `c[k][i][j]`,
    /// validating antisymmetry, Jacobi and the optional representation.
    pub fn from_structure_constants(
        c: [[[f64; 3]; 3]; 3],
        basis_names: [&str; 3],
        rep: Option<Vec<DMatrix<C64>>>,
    ) -> Result<Self, AlgebraError> {
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..=i {
                    let residual = (c[k][i][j] + c[k][j][i]).abs();
                    if residual > tol::EXACT_TOL {
                        return Err(AlgebraError::AntisymmetryViolation { i, j, residual });
                    }
                }
            }
        }
        let alg = LieAlgebra3 {
            basis_names: basis_names.map(str::to_owned),
            c,
            rep: None,
        };
        // Jacobi: [[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j] = 0.
        for i in 0..3 {
            for j in (i + 1)..3 {
                for k in (j + 1)..3 {
                    let ei = basis_vector(i);
                    let ej = basis_vector(j);
                    let ek = basis_vector(k);
                    let cycle = alg.bracket_real(&alg.bracket_real(&ei, &ej), &ek)
                        + alg.bracket_real(&alg.bracket_real(&ej, &ek), &ei)
                        + alg.bracket_real(&alg.bracket_real(&ek, &ei), &ej);
                    let residual = cycle.amax();
                    if residual > tol::EXACT_TOL {
                        return Err(AlgebraError::JacobiViolation { i, j, k, residual });
                    }
                }
            }
        }
        let rep = match rep {
            None => None,
            Some(mats) => {
                if mats.len() != 3 {
                    return Err(AlgebraError::BadRep);
                }
                let n = mats[0].nrows();
                if !(n == 2 || n == 3) || mats.iter().any(|m| m.nrows() != n || m.ncols() != n) {
                    return Err(AlgebraError::BadRep);
                }
                for i in 0..3 {
                    for j in (i + 1)..3 {
                        let comm = &mats[i] * &mats[j] - &mats[j] * &mats[i];
                        let mut expected = DMatrix::<C64>::zeros(n, n);
                        for k in 0..3 {
                            expected += &mats[k] * C64::new(c[k][i][j], 0.0);
                        }
                        let residual = (&comm - &expected)
                            .iter()
                            .map(|x| x.norm())
                            .fold(0.0, f64::max);
                        if residual > tol::EXACT_TOL {
                            return Err(AlgebraError::RepMismatch { i, j, residual });
                        }
                    }
                }
                Some(mats)
            }
        };
        Ok(LieAlgebra3 { rep, ..alg })
    }

    pub fn basis_names(&self) -> [&str; 3] {
        [
            &self.basis_names[0],
            &self.basis_names[1],
            &self.basis_names[2],
        ]
    }

    /// Coefficient of `e_k` in `[e_i, e_j]`.
    pub fn structure_constant(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[k][i][j]
    }

    /// `[e_i, e_j]` as a real coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec3r {
        Vec3r::new(self.c[0][i][j], self.c[1][i][j], self.c[2][i][j])
    }

    /// Complex-bilinear bracket on the complexified algebra.
    pub fn bracket(&self, x: &Vec3c, y: &Vec3c) -> Vec3c {
        let mut out = Vec3c::zeros();
        for k in 0..3 {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..3 {
                for j in 0..3 {
                    if self.c[k][i][j] != 0.0 {
                        acc += x[i] * y[j] * self.c[k][i][j];
                    }
                }
            }
            out[k] = acc;
        }
        out
    }

    /// Bracket restricted to real vectors.
    pub fn bracket_real(&self, x: &Vec3r, y: &Vec3r) -> Vec3r {
        let mut out = Vec3r::zeros();
        for k in 0..3 {
            let mut acc = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    acc += self.c[k][i][j] * x[i] * y[j];
                }
            }
            out[k] = acc;
        }
        out
    }

    /// Matrix of `ad_x = [x, ·]` in the chosen basis (columns are
    /// `bracket(x, e_j)`).
    pub fn adjoint_matrix(&self, x: &Vec3c) -> Matrix3<C64> {
        let mut m = Matrix3::<C64>::zeros();
        for j in 0..3 {
            for k in 0..3 {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..3 {
                    acc += x[i] * self.c[k][i][j];
                }
                m[(k, j)] = acc;
            }
        }
        m
    }

    /// Killing form `⟨x, y⟩ = tr(ad_x ∘ ad_y)`, complex-bilinear.
    pub fn killing_form(&self, x: &Vec3c, y: &Vec3c) -> C64 {
        (self.adjoint_matrix(x) * self.adjoint_matrix(y)).trace()
    }

    /// Killing form as a real symmetric matrix on the basis.
    pub fn killing_matrix(&self) -> Matrix3<f64> {
        let mut k = Matrix3::<f64>::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let v = self.killing_form(&complexify(&basis_vector(i)), &complexify(&basis_vector(j)));
                k[(i, j)] = v.re;
            }
        }
        k
    }

    pub fn rep(&self) -> Option<&[DMatrix<C64>]> {
        self.rep.as_deref()
    }

    /// Representation matrix of a (complexified) algebra element.
    pub fn rep_of(&self, x: &Vec3c) -> Result<DMatrix<C64>, AlgebraError> {
        let mats = self.rep.as_ref().ok_or(AlgebraError::NoRepresentation)?;
        let n = mats[0].nrows();
        let mut m = DMatrix::<C64>::zeros(n, n);
        for i in 0..3 {
            m += &mats[i] * x[i];
        }
        Ok(m)
    }

    /// Group element `exp(x)` through the matrix representation.
    pub fn group_exp(&self, x: &Vec3r) -> Result<DMatrix<C64>, AlgebraError> {
        let m = self.rep_of(&complexify(x))?;
        Ok(expm(&m))
    }
}

/// `e_i` as a real coordinate vector.
pub fn basis_vector(i: usize) -> Vec3r {
    let mut v = Vec3r::zeros();
    v[i] = 1.0;
    v
}

/// Embeds a real coordinate vector into the complexification.
pub fn complexify(x: &Vec3r) -> Vec3c {
    Vec3c::new(
        C64::new(x[0], 0.0),
        C64::new(x[1], 0.0),
        C64::new(x[2], 0.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{builtin_algebra, GroupTag};

    fn cx(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_rule_on_equal_indices() {
        let err = construct_algebra(
            &[BracketRule {
                i: 1,
                j: 1,
                k: 0,
                v: 1.0,
            }],
            ["A", "B", "C"],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::AntisymmetryViolation { .. }));
    }

    #[test]
    fn rejects_jacobi_violation() {
        // sl2-like table with [B, C] perturbed: the Jacobi cycle on (A, B, C)
        // picks up a -2*eps*B term.
        let err = construct_algebra(
            &[
                BracketRule { i: 0, j: 1, k: 1, v: 2.0 },
                BracketRule { i: 0, j: 2, k: 2, v: -2.0 },
                BracketRule { i: 1, j: 2, k: 0, v: 1.0 },
                BracketRule { i: 1, j: 2, k: 1, v: 0.25 },
            ],
            ["A", "B", "C"],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::JacobiViolation { .. }));
    }

    #[test]
    fn rejects_mismatched_representation() {
        // Valid heisenberg table, but with the C matrix scaled by 2.
        let mut c_mat = DMatrix::<C64>::zeros(3, 3);
        c_mat[(0, 2)] = cx(2.0, 0.0);
        let mut a_mat = DMatrix::<C64>::zeros(3, 3);
        a_mat[(0, 1)] = cx(1.0, 0.0);
        let mut b_mat = DMatrix::<C64>::zeros(3, 3);
        b_mat[(1, 2)] = cx(1.0, 0.0);
        let err = construct_algebra(
            &[BracketRule { i: 0, j: 1, k: 2, v: 1.0 }],
            ["A", "B", "C"],
            Some(vec![a_mat, b_mat, c_mat]),
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::RepMismatch { .. }));
    }

    #[test]
    fn bracket_is_complex_bilinear() {
        let alg = builtin_algebra(GroupTag::Sl2r);
        let x = Vec3c::new(cx(1.0, 2.0), cx(-0.5, 0.25), cx(0.0, 1.0));
        let y = Vec3c::new(cx(0.3, -1.0), cx(2.0, 0.0), cx(1.0, 1.0));
        let lam = cx(0.7, -1.3);
        let lhs = alg.bracket(&x.map(|v| v * lam), &y);
        let rhs = alg.bracket(&x, &y).map(|v| v * lam);
        assert!((lhs - rhs).camax() < tol::EXACT_TOL);
    }

    #[test]
    fn adjoint_matrix_represents_the_bracket() {
        let alg = builtin_algebra(GroupTag::Su2);
        let x = Vec3c::new(cx(0.5, 0.0), cx(1.0, -1.0), cx(-2.0, 0.3));
        let y = Vec3c::new(cx(1.0, 1.0), cx(0.0, 0.0), cx(0.7, -0.2));
        let via_matrix = alg.adjoint_matrix(&x) * y;
        let direct = alg.bracket(&x, &y);
        assert!((via_matrix - direct).camax() < tol::EXACT_TOL);
        // ad_[x,y] = [ad_x, ad_y]
        let adx = alg.adjoint_matrix(&x);
        let ady = alg.adjoint_matrix(&y);
        let lhs = alg.adjoint_matrix(&alg.bracket(&x, &y));
        let rhs = adx * ady - ady * adx;
        assert!((lhs - rhs).camax() < tol::EXACT_TOL);
    }

    #[test]
    fn killing_form_of_sl2_is_eight_times_det_form() {
        // For X = [[x1, x2], [x3, -x1]] the Killing form is 8(x1^2 + x2 x3).
        let alg = builtin_algebra(GroupTag::Sl2r);
        let cases = [
            ([1.0, 0.0, 0.0], 8.0),
            ([0.0, 1.0, 1.0], 8.0),
            ([0.5, -1.0, 2.0], 8.0 * (0.25 - 2.0)),
        ];
        for (coords, expected) in cases {
            let x = complexify(&Vec3r::from_row_slice(&coords));
            let k = alg.killing_form(&x, &x);
            assert!((k.re - expected).abs() < tol::EXACT_TOL, "got {k}");
            assert!(k.im.abs() < tol::EXACT_TOL);
        }
    }

    #[test]
    fn killing_form_signatures() {
        // e2 is degenerate, su2 negative definite.
        let e2 = builtin_algebra(GroupTag::E2).killing_matrix();
        assert!(e2.determinant().abs() < tol::EXACT_TOL);
        let su2 = builtin_algebra(GroupTag::Su2).killing_matrix();
        let eig = su2.symmetric_eigenvalues();
        assert!(eig.iter().all(|&l| l < -1.0));
    }

    #[test]
    fn group_exp_inverse_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED);
        for tag in [GroupTag::Sl2r, GroupTag::Su2, GroupTag::Heis, GroupTag::E2] {
            let alg = builtin_algebra(tag);
            for _ in 0..20 {
                let mut x = Vec3r::new(
                    rng.gen_range(-5.0..5.0),
                    rng.gen_range(-5.0..5.0),
                    rng.gen_range(-5.0..5.0),
                );
                if x.norm() > 5.0 {
                    x *= 5.0 / x.norm();
                }
                let g = alg.group_exp(&x).unwrap();
                let ginv = alg.group_exp(&(-x)).unwrap();
                let prod = &g * &ginv;
                let id = DMatrix::<C64>::identity(prod.nrows(), prod.ncols());
                let err = (&prod - &id).iter().map(|v| v.norm()).fold(0.0, f64::max);
                assert!(err < tol::EXACT_TOL, "{tag:?}: exp(X)exp(-X) residual {err}");
            }
        }
    }

    #[test]
    fn group_exp_without_rep_fails() {
        let alg = construct_algebra(&[], ["X", "Y", "Z"], None).unwrap();
        assert!(matches!(
            alg.group_exp(&Vec3r::new(1.0, 0.0, 0.0)),
            Err(AlgebraError::NoRepresentation)
        ));
    }
}
