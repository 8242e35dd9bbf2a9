//! Matrix exponential.
//!
//! Hermitian and anti-Hermitian inputs (every propagator in this crate) go
//! through the eigendecomposition, which keeps `exp(−iHt)` unitary to
//! rounding. Other inputs use scaling and squaring of a truncated Taylor
//! series.

use num_complex::Complex64;

use super::eigen::eigh;
use super::matrix::Matrix;
use crate::{Error, Result};

const TAYLOR_TERMS: usize = 24;
const SCALED_NORM: f64 = 0.5;

pub fn expm<const N: usize>(m: &Matrix<N>) -> Result<Matrix<N>> {
    if !m.is_finite() {
        return Err(Error::InvalidInput("matrix exponential of non-finite matrix".into()));
    }
    if N != 2 && N != 4 {
        return Err(Error::InvalidInput(format!(
            "matrix exponential supports dimensions 2 and 4, got {N}"
        )));
    }
    let tol = 1e-14 * m.max_abs().max(1.0);
    if m.is_hermitian(tol) {
        let e = eigh(&hermitian_part(m))?;
        return Ok(e.map_spectrum(|l| Complex64::new(l.exp(), 0.0)));
    }
    if m.is_anti_hermitian(tol) {
        // M = iK with K Hermitian.
        let k = m.scale(Complex64::new(0.0, -1.0));
        let e = eigh(&hermitian_part(&k))?;
        return Ok(e.map_spectrum(|l| Complex64::from_polar(1.0, l)));
    }
    Ok(scaling_and_squaring(m))
}

fn hermitian_part<const N: usize>(m: &Matrix<N>) -> Matrix<N> {
    (*m + m.adjoint()).scale_real(0.5)
}

pub(crate) fn scaling_and_squaring<const N: usize>(m: &Matrix<N>) -> Matrix<N> {
    let norm = m.norm1();
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m.scale_real(2f64.powi(-squarings));
    let mut result = taylor(&scaled);
    for _ in 0..squarings {
        result = result * result;
    }
    result
}

fn taylor<const N: usize>(m: &Matrix<N>) -> Matrix<N> {
    let mut term = Matrix::<N>::identity();
    let mut sum = term;
    for k in 1..=TAYLOR_TERMS {
        term = (term * *m).scale_real(1.0 / k as f64);
        sum = sum + term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{alpha, pauli, Axis, Mat2, Mat4};

    #[test]
    fn zero_maps_to_identity() {
        assert!(expm(&Mat2::zeros()).unwrap().max_diff(&Mat2::identity()) < 1e-15);
        assert!(expm(&Mat4::zeros()).unwrap().max_diff(&Mat4::identity()) < 1e-15);
    }

    #[test]
    fn rotation_generated_by_sigma_x() {
        let theta = 0.7;
        let m = pauli(Axis::X).scale(Complex64::new(0.0, theta));
        let analytic = Mat2::identity().scale_real(theta.cos())
            + pauli(Axis::X).scale(Complex64::new(0.0, theta.sin()));
        let via_eig = expm(&m).unwrap();
        let via_series = scaling_and_squaring(&m);
        assert!(via_eig.max_diff(&analytic) < 1e-15);
        assert!(via_series.max_diff(&analytic) < 1e-15);
    }

    #[test]
    fn anti_hermitian_gives_unitary() {
        let h = alpha(Axis::X) * 1.3 + alpha(Axis::Y) * -0.4 + crate::math::beta1() * 2.5;
        let u = expm(&h.scale(Complex64::new(0.0, -3.0))).unwrap();
        assert!((u.adjoint() * u).max_diff(&Mat4::identity()) < 1e-13);
    }

    #[test]
    fn general_matrix_inverse_pair() {
        let m = Mat2::from_rows([
            [Complex64::new(0.3, 0.1), Complex64::new(2.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.5)],
        ]);
        let prod = expm(&m).unwrap() * expm(&-m).unwrap();
        assert!(prod.max_diff(&Mat2::identity()) < 1e-12);
    }

    #[test]
    fn nilpotent_matrix_has_exact_series() {
        let m = Mat2::from_real([[0.0, 5.0], [0.0, 0.0]]);
        let e = expm(&m).unwrap();
        assert!(e.max_diff(&Mat2::from_real([[1.0, 5.0], [0.0, 1.0]])) < 1e-12);
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let mut m = Mat2::zeros();
        m[(0, 1)] = Complex64::new(f64::INFINITY, 0.0);
        assert!(expm(&m).is_err());
    }
}
