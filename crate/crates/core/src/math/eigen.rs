//! Hermitian eigendecomposition for the two supported sizes.
//!
//! 2×2 matrices use the closed-form roots of the characteristic polynomial;
//! 4×4 matrices use cyclic complex Jacobi rotations.

use num_complex::Complex64;

use super::matrix::Matrix;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with the matching unit eigenvectors stored
/// as the columns of `vectors`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianEigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: Matrix<N>,
}

impl<const N: usize> HermitianEigen<N> {
    pub fn vector(&self, k: usize) -> [Complex64; N] {
        self.vectors.column(k)
    }

    /// `V·diag(f(λ))·V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex64) -> Matrix<N> {
        let fd = Matrix::from_diag(self.values.map(f));
        self.vectors * fd * self.vectors.adjoint()
    }

    pub fn reconstruct(&self) -> Matrix<N> {
        self.map_spectrum(|l| Complex64::new(l, 0.0))
    }
}

/// Eigendecomposition of a Hermitian 2×2 or 4×4 matrix.
pub fn eigh<const N: usize>(m: &Matrix<N>) -> Result<HermitianEigen<N>> {
    if !m.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let scale = m.max_abs().max(1.0);
    if !m.is_hermitian(1e-12 * scale) {
        return Err(Error::InvalidInput("matrix is not Hermitian".into()));
    }
    let eig = match N {
        2 => closed_form_2(m),
        4 => jacobi(m),
        _ => {
            return Err(Error::InvalidInput(format!(
                "eigensolver supports dimensions 2 and 4, got {N}"
            )))
        }
    };
    Ok(sorted(eig))
}

fn closed_form_2<const N: usize>(m: &Matrix<N>) -> HermitianEigen<N> {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let radius = half.hypot(b.norm());

    let mut vectors = Matrix::<N>::identity();
    let values;
    if b.norm() == 0.0 {
        values = [a, d];
    } else {
        values = [mean - radius, mean + radius];
        for (k, &lambda) in values.iter().enumerate() {
            // Two equivalent null vectors of (M − λI); keep the better-conditioned one.
            let u = [b, Complex64::new(lambda - a, 0.0)];
            let w = [Complex64::new(lambda - d, 0.0), b.conj()];
            let nu = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
            let nw = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
            let (v, n) = if nu >= nw { (u, nu) } else { (w, nw) };
            vectors[(0, k)] = v[0] / n;
            vectors[(1, k)] = v[1] / n;
        }
    }
    let mut out = [0.0; N];
    out[..2].copy_from_slice(&values);
    HermitianEigen { values: out, vectors }
}

fn off_diagonal<const N: usize>(a: &Matrix<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi<const N: usize>(m: &Matrix<N>) -> HermitianEigen<N> {
    let mut a = *m;
    for i in 0..N {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let mut v = Matrix::<N>::identity();
    let threshold = f64::EPSILON * m.frobenius().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a) <= threshold {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let g = a[(p, q)];
                let gabs = g.norm();
                if gabs == 0.0 {
                    continue;
                }
                let phase = g / gabs;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * gabs);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;

                // J = D·R with D = diag(1, e^{-iθ}) on (p, q): J†AJ zeroes A[p][q].
                let mut j = Matrix::<N>::identity();
                j[(p, p)] = Complex64::new(cs, 0.0);
                j[(p, q)] = Complex64::new(sn, 0.0);
                j[(q, p)] = -phase.conj() * sn;
                j[(q, q)] = phase.conj() * cs;

                a = j.adjoint() * a * j;
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                v = v * j;
            }
        }
    }
    HermitianEigen { values: std::array::from_fn(|i| a[(i, i)].re), vectors: v }
}

fn sorted<const N: usize>(eig: HermitianEigen<N>) -> HermitianEigen<N> {
    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| eig.values[i].total_cmp(&eig.values[j]));
    HermitianEigen {
        values: order.map(|i| eig.values[i]),
        vectors: Matrix::from_fn(|r, c| eig.vectors[(r, order[c])]),
    }
}
