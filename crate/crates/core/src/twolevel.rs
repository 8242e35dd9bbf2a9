//! The standard two-level formulation: rotating-frame Hamiltonian with the
//! coupling carried by σ_x, the weak-field criterion, and 2-spinor dynamics.
//!
//! Detuning is always `Δ = ω₀ − ω_a` (drive minus atom), the same sign used by
//! the driven potential in [`crate::driven`].

use num_complex::Complex64;
use serde::Serialize;

use crate::math::{pauli, propagate, Axis, Mat2, Spinor2, Trajectory, Vec3};
use crate::{Error, Result};

/// Static description of a two-level atom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoLevelAtom {
    /// Transition dipole matrix element μ.
    pub mu: f64,
    /// Transition halfwidth Γ.
    pub gamma: f64,
    /// Transition frequency ω_a.
    pub omega_a: f64,
    /// Lower-level population ρ₁.
    pub rho1: f64,
    /// Upper-level population ρ₂.
    pub rho2: f64,
    /// Polarizability ξ.
    pub xi: f64,
}

impl TwoLevelAtom {
    pub fn new(mu: f64, gamma: f64, omega_a: f64) -> Result<Self> {
        Self { mu, gamma, omega_a, rho1: 1.0, rho2: 0.0, xi: 0.0 }.validated()
    }

    pub fn with_populations(mut self, rho1: f64, rho2: f64) -> Result<Self> {
        self.rho1 = rho1;
        self.rho2 = rho2;
        self.validated()
    }

    pub fn with_polarizability(mut self, xi: f64) -> Self {
        self.xi = xi;
        self
    }

    /// Population inversion `ρ₂ − ρ₁`.
    pub fn inversion(&self) -> f64 {
        self.rho2 - self.rho1
    }

    fn validated(self) -> Result<Self> {
        if !(self.gamma > 0.0) {
            return Err(Error::Domain(format!("halfwidth gamma must be positive, got {}", self.gamma)));
        }
        if !(self.rho1 >= 0.0 && self.rho2 >= 0.0) {
            return Err(Error::Domain("level populations must be non-negative".into()));
        }
        Ok(self)
    }
}

/// Classical monochromatic drive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DriveField {
    pub e0: f64,
    pub polarization: Vec3,
    pub omega0: f64,
    pub kvec: Vec3,
    pub intensity: f64,
}

impl DriveField {
    /// `polarization` is normalised here; it must be non-zero.
    pub fn new(e0: f64, polarization: Vec3, omega0: f64, kvec: Vec3, intensity: f64) -> Result<Self> {
        if !(e0 >= 0.0) {
            return Err(Error::InvalidInput(format!("field amplitude must be non-negative, got {e0}")));
        }
        if !(intensity >= 0.0) {
            return Err(Error::InvalidInput(format!("intensity must be non-negative, got {intensity}")));
        }
        let polarization = polarization
            .normalized()
            .ok_or_else(|| Error::InvalidInput("polarization must be a non-zero vector".into()))?;
        Ok(Self { e0, polarization, omega0, kvec, intensity })
    }

    /// Drive of amplitude `e0` at frequency `omega0`, polarised along z with no
    /// propagation data.
    pub fn simple(e0: f64, omega0: f64) -> Result<Self> {
        Self::new(e0, Vec3::new(0.0, 0.0, 1.0), omega0, Vec3::ZERO, 0.0)
    }
}

/// Outcome of the weak-field check `μE/(ħΓ) < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityReport {
    pub ratio: f64,
    pub within_weak_field: bool,
}

/// Evaluates `μE₀/(ħΓ)`. A ratio of exactly one is outside the weak-field
/// regime. The check only reports; nothing downstream refuses to run.
pub fn check_weak_field(atom: &TwoLevelAtom, field: &DriveField, hbar: f64) -> Result<ValidityReport> {
    if !(atom.gamma > 0.0) {
        return Err(Error::Domain(format!("halfwidth gamma must be positive, got {}", atom.gamma)));
    }
    if !(hbar > 0.0) {
        return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
    }
    let ratio = atom.mu * field.e0 / (hbar * atom.gamma);
    Ok(ValidityReport { ratio, within_weak_field: ratio < 1.0 })
}

/// Rabi frequency `Ω = μE₀/ħ`.
pub fn rabi_frequency(atom: &TwoLevelAtom, field: &DriveField, hbar: f64) -> f64 {
    atom.mu * field.e0 / hbar
}

/// Detuning `Δ = ω₀ − ω_a`.
pub fn detuning(atom: &TwoLevelAtom, field: &DriveField) -> f64 {
    field.omega0 - atom.omega_a
}

/// Rotating-frame Hamiltonian `H = −(ħΔ/2)σ_z − (ħΩ/2)σ_x`.
pub fn rwa_hamiltonian(atom: &TwoLevelAtom, field: &DriveField, hbar: f64) -> Mat2 {
    rwa_hamiltonian_from(detuning(atom, field), rabi_frequency(atom, field, hbar), hbar)
}

/// Same Hamiltonian from detuning and Rabi frequency directly.
pub fn rwa_hamiltonian_from(detuning: f64, rabi: f64, hbar: f64) -> Mat2 {
    pauli(Axis::Z) * (-0.5 * hbar * detuning) + pauli(Axis::X) * (-0.5 * hbar * rabi)
}

/// Exact-exponential propagation of a 2-spinor under a constant Hamiltonian.
pub fn propagate2(state: Spinor2, hamiltonian: &Mat2, hbar: f64, duration: f64, dt: f64) -> Result<Trajectory<2>> {
    propagate(state, hamiltonian, hbar, duration, dt)
}

/// Lab-frame dipole coupling `−μ σ⃗·E⃗` with a real field vector.
pub fn pauli_coupling(mu: f64, efield: Vec3) -> Mat2 {
    let sum = pauli(Axis::X) * efield.x + pauli(Axis::Y) * efield.y + pauli(Axis::Z) * efield.z;
    sum.scale(Complex64::new(-mu, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::Propagator;

    fn atom(mu: f64, gamma: f64) -> TwoLevelAtom {
        TwoLevelAtom::new(mu, gamma, 0.0).unwrap()
    }

    #[test]
    fn weak_field_ratio() {
        let r = check_weak_field(&atom(1.0, 1.0), &DriveField::simple(0.5, 0.0).unwrap(), 1.0).unwrap();
        assert_eq!(r.ratio, 0.5);
        assert!(r.within_weak_field);

        let r = check_weak_field(&atom(2.0, 1.0), &DriveField::simple(1.0, 0.0).unwrap(), 1.0).unwrap();
        assert_eq!(r.ratio, 2.0);
        assert!(!r.within_weak_field);
    }

    #[test]
    fn weak_field_boundary_is_exclusive() {
        let r = check_weak_field(&atom(1.0, 1.0), &DriveField::simple(1.0, 0.0).unwrap(), 1.0).unwrap();
        assert_eq!(r.ratio, 1.0);
        assert!(!r.within_weak_field);
    }

    #[test]
    fn zero_gamma_is_a_domain_error() {
        assert!(matches!(TwoLevelAtom::new(1.0, 0.0, 0.0), Err(Error::Domain(_))));
        let bad = TwoLevelAtom { mu: 1.0, gamma: 0.0, omega_a: 0.0, rho1: 1.0, rho2: 0.0, xi: 0.0 };
        let f = DriveField::simple(1.0, 0.0).unwrap();
        assert!(matches!(check_weak_field(&bad, &f, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn hamiltonian_examples() {
        assert_eq!(rwa_hamiltonian_from(0.0, 0.0, 1.0), Mat2::zeros());
        assert_eq!(rwa_hamiltonian_from(0.0, 2.0, 1.0), -pauli(Axis::X));
        let a = TwoLevelAtom::new(0.8, 1.0, 2.0).unwrap();
        let f = DriveField::simple(1.5, 2.7).unwrap();
        let h = rwa_hamiltonian(&a, &f, 1.3);
        assert!(h.is_hermitian(0.0));
        assert_eq!(h.trace(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn zero_hamiltonian_freezes_state() {
        let s = Spinor2::new([Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        let t = propagate2(s, &Mat2::zeros(), 1.0, 5.0, 0.5).unwrap();
        for sample in &t.samples {
            assert!((sample.state.amplitudes()[0] - s.amplitudes()[0]).norm() < 1e-15);
            assert!((sample.state.amplitudes()[1] - s.amplitudes()[1]).norm() < 1e-15);
        }
    }

    #[test]
    fn resonant_pi_pulse_inverts() {
        let h = rwa_hamiltonian_from(0.0, 1.0, 1.0);
        let t = propagate2(Spinor2::basis(0), &h, 1.0, std::f64::consts::PI, 0.01).unwrap();
        assert!((t.last().populations[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn step_unitary_is_unitary() {
        let h = rwa_hamiltonian_from(0.3, 1.7, 1.0);
        let p = Propagator::new(&h, 1.0, 0.37).unwrap();
        let u = *p.unitary();
        assert!((u.adjoint() * u).max_diff(&Mat2::identity()) < 1e-12);
    }

    #[test]
    fn lab_frame_coupling_along_x_is_sigma_x() {
        let v = pauli_coupling(2.0, Vec3::new(0.5, 0.0, 0.0));
        assert_eq!(v, -pauli(Axis::X));
    }
}
