//! Left-invariant CR structures on three-dimensional Lie groups.
//!
//! A left-invariant CR structure on a 3-dimensional Lie group is the same
//! data as a complex line `[L]` in the complexified Lie algebra with
//! `L ∧ L̄ ≠ 0`. This crate computes everything that can be said about such
//! a line with finite-dimensional linear algebra:
//!
//! * [`algebra`] — three-dimensional Lie algebras from structure constants,
//!   with brackets, Killing form, adjoint matrices and a matrix exponential
//!   for the optional matrix representation;
//! * [`line`] — complex lines in the complexified algebra, the
//!   real/degenerate/regular trichotomy, and the induced contact frame;
//! * [`coframe`] — adapted and well-adapted coframes, the structure triple
//!   `(a, b, c)`, the closed-form normal Cartan connection coefficients,
//!   curvature scalars and the sphericity test;
//! * [`atlas`] — the four built-in unimodular groups (`sl2r`, `su2`,
//!   `heis`, `e2`), canonical one-parameter families of lines, root pairs
//!   of the associated binary quadratic, and the orbit classification with
//!   its distance invariant;
//! * [`realize`] — numerical realizations: CR maps into adjoint orbits,
//!   model quadrics, and the explicit Heisenberg embedding;
//! * [`verify`] — the self-contained verification battery used by the CLI
//!   and the acceptance tests.
//!
//! All numerical thresholds live in [`tol`]; every tolerance used anywhere
//! in the crate is named and documented there.

pub mod algebra;
pub mod atlas;
pub mod coframe;
pub mod expm;
pub mod line;
pub mod realize;
pub mod report;
pub mod tol;
pub mod verify;

pub use algebra::{construct_algebra, BracketRule, LieAlgebra3};
pub use line::ComplexLine;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
/// Complex 3-vector (coordinates with respect to the algebra basis).
pub type Vec3c = nalgebra::Vector3<C64>;
/// Real 3-vector.
pub type Vec3r = nalgebra::Vector3<f64>;
/// Dynamically sized complex matrix (representation matrices, exponentials).
pub type DMatrixC = nalgebra::DMatrix<C64>;
