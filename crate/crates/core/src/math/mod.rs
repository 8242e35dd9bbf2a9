//! Fixed-size complex linear algebra for the 2- and 4-dimensional models.
//!
//! Everything here is dense and stack allocated. Only the sizes that occur in
//! the two-level and 4-spinor models are supported by the eigensolvers and the
//! matrix exponential.

mod eigen;
mod expm;
mod matrix;
mod operators;
mod propagator;
mod spinor;
mod vector;

pub use eigen::{eigh, HermitianEigen};
pub use expm::expm;
pub use matrix::{Mat2, Mat4, Matrix};
pub use operators::{alpha, beta1, dirac_beta, pauli, Axis};
pub use propagator::{propagate, Propagator, Sample, Trajectory};
pub use spinor::{Spinor, Spinor2, Spinor4};
pub use vector::{CVec3, Vec3};

pub use num_complex::Complex64;

/// Residual bound for exact operator identities evaluated in floating point.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Residual bound for eigendecomposition reconstruction and completeness.
pub const RECON_TOL: f64 = 1e-10;
