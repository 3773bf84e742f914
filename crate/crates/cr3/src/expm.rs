//! Matrix exponential for small complex matrices.
//!
//! Scaling-and-squaring with the degree-13 Padé approximant. The
//! representation matrices in this crate are 2x2 or 3x3, so the single
//! highest-order approximant is used unconditionally (the degree-selection
//! ladder of the general-purpose algorithm buys nothing at these sizes);
//! scaling keeps the argument norm below the degree-13 threshold.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Padé-13 numerator coefficients b_0..b_13.
const PADE_COEFFS: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// 1-norm bound under which the degree-13 approximant is accurate to unit
/// round-off.
const THETA_13: f64 = 5.371920351148152;

fn one_norm(m: &DMatrix<Complex64>) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Computes `exp(a)` for a square complex matrix.
///
/// Panics if `a` is not square. The Padé denominator is always invertible
/// for arguments scaled below `THETA_13`.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    assert_eq!(a.nrows(), a.ncols(), "expm requires a square matrix");
    let n = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new(0.5f64.powi(squarings as i32), 0.0);
    let a1 = a * scale;

    let id = DMatrix::<Complex64>::identity(n, n);
    let a2 = &a1 * &a1;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let b = |k: usize| Complex64::new(PADE_COEFFS[k], 0.0);
    // u = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
        + &a6 * b(7)
        + &a4 * b(5)
        + &a2 * b(3)
        + &id * b(1);
    let u = &a1 * u_inner;
    // v = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &id * b(0);

    let num = &v + &u;
    let den = &v - &u;
    let mut f = den
        .lu()
        .solve(&num)
        .expect("Padé denominator is invertible after scaling");
    for _ in 0..squarings {
        f = &f * &f;
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        (a - b).iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = DMatrix::<Complex64>::zeros(3, 3);
        let e = expm(&z);
        let id = DMatrix::<Complex64>::identity(3, 3);
        assert!(max_abs_diff(&e, &id) < 1e-15);
    }

    #[test]
    fn exp_of_diagonal() {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0, 0.0),
            c(-2.0, 0.5),
        ]));
        let e = expm(&d);
        assert!((e[(0, 0)] - c(1.0, 0.0).exp()).norm() < 1e-14);
        assert!((e[(1, 1)] - c(-2.0, 0.5).exp()).norm() < 1e-14);
        assert!(e[(0, 1)].norm() < 1e-15);
        assert!(e[(1, 0)].norm() < 1e-15);
    }

    #[test]
    fn exp_of_nilpotent_matches_truncated_series() {
        // Strictly upper triangular 3x3: exp = I + X + X^2/2 exactly.
        let x = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.0, 0.0),
                c(1.5, 0.0),
                c(-0.25, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(2.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
            ],
        );
        let expected =
            DMatrix::<Complex64>::identity(3, 3) + &x + (&x * &x) * c(0.5, 0.0);
        assert!(max_abs_diff(&expm(&x), &expected) < 1e-14);
    }

    #[test]
    fn exp_x_times_exp_minus_x_is_identity() {
        let x = DMatrix::from_row_slice(
            2,
            2,
            &[c(0.3, 1.2), c(-4.0, 0.7), c(2.5, -0.1), c(-0.3, -1.2)],
        );
        let prod = expm(&x) * expm(&(-&x));
        let id = DMatrix::<Complex64>::identity(2, 2);
        assert!(max_abs_diff(&prod, &id) < 1e-12);
    }

    #[test]
    fn exp_of_antihermitian_is_unitary() {
        let x = DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 2.0), c(1.0, 3.0), c(-1.0, 3.0), c(0.0, -2.0)],
        );
        let g = expm(&x);
        let prod = &g * g.adjoint();
        let id = DMatrix::<Complex64>::identity(2, 2);
        assert!(max_abs_diff(&prod, &id) < 1e-13);
    }

    #[test]
    fn large_norm_argument_uses_squaring() {
        // Real 2x2 with known exponential: X = [[0, t], [-t, 0]] rotates.
        let t = 20.0;
        let x = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(t, 0.0), c(-t, 0.0), c(0.0, 0.0)]);
        let e = expm(&x);
        assert!((e[(0, 0)].re - t.cos()).abs() < 1e-11);
        assert!((e[(0, 1)].re - t.sin()).abs() < 1e-11);
    }
}
