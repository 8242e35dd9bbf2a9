use num_complex::Complex64;

use crate::{Error, Result};

/// Normalised `N`-component state vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor<const N: usize> {
    amps: [Complex64; N],
}

pub type Spinor2 = Spinor<2>;
pub type Spinor4 = Spinor<4>;

impl<const N: usize> Spinor<N> {
    /// Normalises `amps`; rejects the zero vector and non-finite entries.
    pub fn new(amps: [Complex64; N]) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("spinor amplitudes must be finite".into()));
        }
        let norm = norm_of(&amps);
        if norm == 0.0 {
            return Err(Error::InvalidInput("spinor amplitudes must not all vanish".into()));
        }
        Ok(Self { amps: amps.map(|z| z / norm) })
    }

    /// Unit vector along component `index`.
    pub fn basis(index: usize) -> Self {
        assert!(index < N, "basis index {index} out of range for dimension {N}");
        let mut amps = [Complex64::new(0.0, 0.0); N];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    /// Wraps amplitudes that are already normalised by construction, such as
    /// the image of a normalised state under a unitary step.
    pub(crate) fn from_unitary_image(amps: [Complex64; N]) -> Self {
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[Complex64; N] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amps)
    }

    /// `|ψᵢ|²` for every component.
    pub fn populations(&self) -> [f64; N] {
        self.amps.map(|z| z.norm_sqr())
    }
}

pub(crate) fn norm_of<const N: usize>(amps: &[Complex64; N]) -> f64 {
    amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_normalises() {
        let s = Spinor2::new([Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)]).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        let p = s.populations();
        assert!((p[0] - 0.36).abs() < 1e-15 && (p[1] - 0.64).abs() < 1e-15);
    }

    #[test]
    fn zero_and_nan_are_rejected() {
        assert!(Spinor4::new([Complex64::new(0.0, 0.0); 4]).is_err());
        let mut a = [Complex64::new(1.0, 0.0); 2];
        a[1].im = f64::NAN;
        assert!(Spinor2::new(a).is_err());
    }
}
