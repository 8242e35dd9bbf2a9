//! Numerical models of a two-level atom in a resonant field.
//!
//! The crate is organised bottom-up:
//!
//! * [`math`] – fixed-size complex matrices, vectors and spinors, the Pauli and
//!   4×4 block operators, Hermitian eigensolvers and the matrix exponential.
//! * [`twolevel`] – the rotating-frame two-level Hamiltonian, the weak-field
//!   criterion and exact-exponential propagation of 2-spinors.
//! * [`diraclike`] – the 4-spinor Hamiltonian built from the α and β¹ blocks,
//!   its plane-wave modes and a parity audit of the two couplings.
//! * [`dipole`] – the retarded dipole field, pair energy, orientation averages
//!   and a seeded Monte-Carlo estimator that checks them.
//! * [`driven`] – the laser-driven interatomic potential with a pole-free
//!   evaluator, plus attenuation and photon-exchange regime checks.
//! * [`cli`] – JSON configuration, sweeps, trajectories, audits and CSV output.

pub mod cli;
pub mod dipole;
pub mod diraclike;
pub mod driven;
mod error;
pub mod math;
pub mod twolevel;

pub use error::{Error, Result};
