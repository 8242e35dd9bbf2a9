//! Piecewise-constant unitary time stepping.

use num_complex::Complex64;

use super::expm::expm;
use super::matrix::Matrix;
use super::spinor::{norm_of, Spinor};
use crate::{Error, Result};

/// Exact one-step propagator `U = exp(−iHΔt/ħ)` for a constant Hamiltonian.
#[derive(Debug, Clone, Copy)]
pub struct Propagator<const N: usize> {
    unitary: Matrix<N>,
    dt: f64,
}

impl<const N: usize> Propagator<N> {
    pub fn new(hamiltonian: &Matrix<N>, hbar: f64, dt: f64) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidInput(format!("time step must be positive, got {dt}")));
        }
        if !(hbar > 0.0) {
            return Err(Error::InvalidInput(format!("hbar must be positive, got {hbar}")));
        }
        let generator = hamiltonian.scale(Complex64::new(0.0, -dt / hbar));
        Ok(Self { unitary: expm(&generator)?, dt })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn unitary(&self) -> &Matrix<N> {
        &self.unitary
    }

    /// Applies one step to raw amplitudes; no renormalisation.
    pub fn step(&self, amps: &[Complex64; N]) -> [Complex64; N] {
        self.unitary.mul_vec(amps)
    }
}

/// One recorded point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<const N: usize> {
    pub time: f64,
    pub state: Spinor<N>,
    pub populations: [f64; N],
}

impl<const N: usize> Sample<N> {
    pub fn norm(&self) -> f64 {
        self.state.norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<const N: usize> {
    pub samples: Vec<Sample<N>>,
}

impl<const N: usize> Trajectory<N> {
    pub fn last(&self) -> &Sample<N> {
        self.samples.last().expect("trajectory always holds the initial sample")
    }

    /// `max_t |‖ψ(t)‖ − 1|`.
    pub fn max_norm_drift(&self) -> f64 {
        self.samples.iter().map(|s| (s.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Propagates `state` under constant `hamiltonian` from `t = 0` to `duration`,
/// recording every step. A final shorter step is added when `duration` is not
/// a multiple of `dt`.
pub fn propagate<const N: usize>(
    state: Spinor<N>,
    hamiltonian: &Matrix<N>,
    hbar: f64,
    duration: f64,
    dt: f64,
) -> Result<Trajectory<N>> {
    if !(duration >= 0.0) || !duration.is_finite() {
        return Err(Error::InvalidInput(format!("duration must be non-negative, got {duration}")));
    }
    let prop = Propagator::new(hamiltonian, hbar, dt)?;

    let ratio = duration / dt;
    let mut full_steps = ratio.floor();
    if ratio - full_steps > 1.0 - 1e-9 {
        full_steps += 1.0;
    }
    let full_steps = full_steps as usize;
    let remainder = duration - full_steps as f64 * dt;

    let record = |time: f64, amps: [Complex64; N]| {
        let state = Spinor::from_unitary_image(amps);
        Sample { time, state, populations: state.populations() }
    };

    let mut samples = Vec::with_capacity(full_steps + 2);
    let mut amps = *state.amplitudes();
    samples.push(record(0.0, amps));
    for j in 1..=full_steps {
        amps = prop.step(&amps);
        samples.push(record(j as f64 * dt, amps));
    }
    if remainder > 1e-12 * duration.max(dt) {
        let tail = Propagator::new(hamiltonian, hbar, remainder)?;
        amps = tail.step(&amps);
        samples.push(record(duration, amps));
    }
    debug_assert!(norm_of(&amps).is_finite());
    Ok(Trajectory { samples })
}
