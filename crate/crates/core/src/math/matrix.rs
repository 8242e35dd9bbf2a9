use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

/// Dense row-major `N×N` complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix<const N: usize> {
    data: [[Complex64; N]; N],
}

pub type Mat2 = Matrix<2>;
pub type Mat4 = Matrix<4>;

impl<const N: usize> Default for Matrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Matrix<N> {
    pub fn zeros() -> Self {
        Self { data: [[Complex64::new(0.0, 0.0); N]; N] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.data[i][i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(data: [[Complex64; N]; N]) -> Self {
        Self { data }
    }

    /// Real-valued matrix from rows of `f64`.
    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = Complex64::new(rows[i][j], 0.0);
            }
        }
        m
    }

    pub fn from_diag(diag: [Complex64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.data[i][i] = d;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> &[[Complex64; N]; N] {
        &self.data
    }

    pub fn column(&self, j: usize) -> [Complex64; N] {
        std::array::from_fn(|i| self.data[i][j])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.data[j][i].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.data[i][i]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(|i, j| self.data[i][j] * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.data[i][j] * s)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..N)
            .map(|j| (0..N).map(|i| self.data[i][j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data
            .iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Elementwise max-modulus distance.
    pub fn max_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .flat_map(|row| row.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_diff(&self.adjoint()) <= tol
    }

    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        (*self + self.adjoint()).max_abs() <= tol
    }

    /// `A·B + B·A`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// `A·B − B·A`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn mul_vec(&self, v: &[Complex64; N]) -> [Complex64; N] {
        std::array::from_fn(|i| (0..N).map(|j| self.data[i][j] * v[j]).sum())
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let mut a = self.data;
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..N {
            let pivot = (col..N)
                .max_by(|&p, &q| a[p][col].norm().total_cmp(&a[q][col].norm()))
                .unwrap_or(col);
            if a[pivot][col].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= a[col][col];
            for row in col + 1..N {
                let f = a[row][col] / a[col][col];
                for k in col..N {
                    let sub = f * a[col][k];
                    a[row][k] -= sub;
                }
            }
        }
        det
    }
}

impl<const N: usize> Index<(usize, usize)> for Matrix<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Matrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i][j]
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::from_fn(|i, j| self.data[i][j] + o.data[i][j])
    }
}

impl<const N: usize> Sub for Matrix<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::from_fn(|i, j| self.data[i][j] - o.data[i][j])
    }
}

impl<const N: usize> Neg for Matrix<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.data[i][j])
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::from_fn(|i, j| (0..N).map(|k| self.data[i][k] * o.data[k][j]).sum())
    }
}

impl<const N: usize> Mul<Complex64> for Matrix<N> {
    type Output = Self;
    fn mul(self, s: Complex64) -> Self {
        self.scale(s)
    }
}

impl<const N: usize> Mul<f64> for Matrix<N> {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale_real(s)
    }
}
