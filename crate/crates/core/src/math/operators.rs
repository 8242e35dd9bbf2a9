//! Pauli matrices and the 4×4 operators of the spinor model.

use num_complex::Complex64;

use super::matrix::{Mat2, Mat4};

/// Cartesian axis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Pauli matrix σ_x, σ_y or σ_z.
pub fn pauli(axis: Axis) -> Mat2 {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match axis {
        Axis::X => Mat2::from_rows([[o, one], [one, o]]),
        Axis::Y => Mat2::from_rows([[o, -i], [i, o]]),
        Axis::Z => Mat2::from_rows([[one, o], [o, -one]]),
    }
}

/// Block matrix `[[0, σ], [σ, 0]]`.
pub fn alpha(axis: Axis) -> Mat4 {
    let s = pauli(axis);
    Mat4::from_fn(|i, j| {
        let (bi, bj) = (i / 2, j / 2);
        if bi != bj {
            s[(i % 2, j % 2)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// The singular diagonal operator `diag(1, 0, −1, 0)` that multiplies ħω in the
/// 4-spinor Hamiltonian.
pub fn beta1() -> Mat4 {
    Mat4::from_real([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ])
}

/// Standard Dirac parity matrix `diag(1, 1, −1, −1)`.
pub fn dirac_beta() -> Mat4 {
    Mat4::from_real([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
        match (a, b, c) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    }

    #[test]
    fn pauli_entries() {
        assert_eq!(pauli(Axis::X), Mat2::from_real([[0.0, 1.0], [1.0, 0.0]]));
        assert_eq!(pauli(Axis::Z), Mat2::from_real([[1.0, 0.0], [0.0, -1.0]]));
        let y = pauli(Axis::Y);
        assert_eq!(y[(0, 1)], Complex64::new(0.0, -1.0));
        assert_eq!(y[(1, 0)], Complex64::new(0.0, 1.0));
    }

    #[test]
    fn pauli_product_table() {
        for a in Axis::ALL {
            for b in Axis::ALL {
                let lhs = pauli(a) * pauli(b);
                let mut rhs = if a == b { Mat2::identity() } else { Mat2::zeros() };
                for c in Axis::ALL {
                    let eps = levi_civita(a.index(), b.index(), c.index());
                    rhs = rhs + pauli(c) * Complex64::new(0.0, eps);
                }
                assert!(lhs.max_diff(&rhs) < 1e-14, "{a:?}{b:?}");
            }
        }
    }

    #[test]
    fn alpha_x_is_antidiagonal() {
        let expected = Mat4::from_real([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(alpha(Axis::X), expected);
    }

    #[test]
    fn alpha_clifford_relations() {
        for a in Axis::ALL {
            assert!((alpha(a) * alpha(a)).max_diff(&Mat4::identity()) < 1e-14);
            for b in Axis::ALL {
                if a != b {
                    assert!(alpha(a).anticommutator(&alpha(b)).max_abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn beta1_is_hermitian_and_singular() {
        let b = beta1();
        assert!(b.is_hermitian(0.0));
        let sq = Mat4::from_real([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(b * b, sq);
        assert_ne!(b * b, Mat4::identity());
        assert_eq!(b.det().norm(), 0.0);
    }

    #[test]
    fn dirac_beta_flips_alpha() {
        let beta = dirac_beta();
        assert_eq!(beta * beta, Mat4::identity());
        for a in Axis::ALL {
            assert!((beta * alpha(a) * beta + alpha(a)).max_abs() < 1e-14);
        }
    }
}
