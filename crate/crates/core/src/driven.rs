//! Laser-driven interatomic potential and the attenuation / photon-exchange
//! regime checks.
//!
//! The potential is
//!
//! ```text
//! U = −πμ²I₀β / (12r(Γ₁²+Δ₁²)) · (a cos kr + b sin kr)
//!     · exp{−kr |(b − a tan kr)/(a + b tan kr)|} · cos(k⃗·r⃗)
//! ```
//!
//! The stable evaluator rewrites the exponent with
//! `(b − a tan x)/(a + b tan x) = tan(φ − x)`, `φ = atan2(b, a)`, which has no
//! poles at `x = π/2 mod π`. It is evaluated as
//! `(b cos x − a sin x)/(a cos x + b sin x)` so that no phase subtraction
//! `φ − x` is rounded. Near the remaining poles of `tan(φ − kr)` the
//! exponential underflows and the potential is reported as zero.

use serde::Serialize;

use crate::dipole::PairGeometry;
use crate::twolevel::{check_weak_field, DriveField, TwoLevelAtom, ValidityReport};
use crate::{Error, Result};

/// Default pole guard of the literal evaluator, in radians of `kr`.
pub const DEFAULT_EPS_POLE: f64 = 1e-8;

/// Reference absorption coefficient quoted for the optical region, in cm⁻¹.
pub const OPTICAL_REFERENCE_K_PER_CM: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DrivenPairParams {
    pub mu: f64,
    pub i0: f64,
    /// Population inversion β = ρ₂ − ρ₁.
    pub beta_pop: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    /// Δ₁ = ω₀ − ω₁.
    pub delta1: f64,
    /// Δ₂ = ω₀ − ω₂.
    pub delta2: f64,
}

impl DrivenPairParams {
    pub fn new(
        mu: f64,
        i0: f64,
        beta_pop: f64,
        gamma1: f64,
        gamma2: f64,
        delta1: f64,
        delta2: f64,
    ) -> Result<Self> {
        let p = Self { mu, i0, beta_pop, gamma1, gamma2, delta1, delta2 };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        if !(self.gamma1 > 0.0 && self.gamma2 > 0.0) {
            return Err(Error::Domain(format!(
                "damping constants must be positive, got gamma1 = {}, gamma2 = {}",
                self.gamma1, self.gamma2
            )));
        }
        Ok(())
    }

    fn prefactor(&self, r: f64) -> f64 {
        -std::f64::consts::PI * self.mu * self.mu * self.i0 * self.beta_pop
            / (12.0 * r * (self.gamma1 * self.gamma1 + self.delta1 * self.delta1))
    }
}

/// `a` and `b` of the driven potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyCoefficients {
    pub a: f64,
    pub b: f64,
}

impl FrequencyCoefficients {
    /// `φ = atan2(b, a)`; lies in `(−π/2, π/2)` since `a > 0`.
    pub fn phase(&self) -> f64 {
        self.b.atan2(self.a)
    }
}

pub fn frequency_coefficients(p: &DrivenPairParams) -> Result<FrequencyCoefficients> {
    p.check()?;
    let (g1, g2, d1, d2) = (p.gamma1, p.gamma2, p.delta1, p.delta2);
    let lorentz2 = g2 * g2 + d2 * d2;
    let a = g1 * g2 * g2 / lorentz2;
    let gs = g1 + g2;
    let dd = d1 - d2;
    let b = g1 * g2 * d2 / lorentz2 + gs * (gs * d1 + g1 * dd) / (gs * gs + dd * dd);
    Ok(FrequencyCoefficients { a, b })
}

/// Every intermediate of one stable evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DrivenEvaluation {
    pub coefficients: FrequencyCoefficients,
    /// `−kr·|tan(φ − kr)|`; `−∞` at a pole of the tangent.
    pub exponent_arg: f64,
    pub value: f64,
}

/// Pole-free evaluation of the driven potential.
pub fn driven_potential(p: &DrivenPairParams, geom: &PairGeometry) -> Result<f64> {
    Ok(evaluate_driven(p, geom)?.value)
}

pub fn evaluate_driven(p: &DrivenPairParams, geom: &PairGeometry) -> Result<DrivenEvaluation> {
    let coefficients = frequency_coefficients(p)?;
    let FrequencyCoefficients { a, b } = coefficients;
    let kr = geom.kr();
    let (sin, cos) = kr.sin_cos();
    // tan(φ − kr) = (b cos kr − a sin kr) / (a cos kr + b sin kr)
    let envelope = a * cos + b * sin;
    let exponent_arg = if kr == 0.0 {
        0.0
    } else {
        let t = ((b * cos - a * sin) / envelope).abs();
        if t.is_finite() {
            -kr * t
        } else {
            f64::NEG_INFINITY
        }
    };
    let damping = exponent_arg.exp();
    let value = if damping == 0.0 {
        0.0
    } else {
        p.prefactor(geom.r()) * envelope * damping * geom.k_dot_r().cos()
    };
    Ok(DrivenEvaluation { coefficients, exponent_arg, value })
}

/// Literal tangent form, kept as an agreement oracle for [`driven_potential`].
pub fn driven_potential_naive(p: &DrivenPairParams, geom: &PairGeometry) -> Result<f64> {
    driven_potential_naive_with(p, geom, DEFAULT_EPS_POLE)
}

pub fn driven_potential_naive_with(p: &DrivenPairParams, geom: &PairGeometry, eps_pole: f64) -> Result<f64> {
    let FrequencyCoefficients { a, b } = frequency_coefficients(p)?;
    let kr = geom.kr();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let offset = (kr - half_pi).rem_euclid(std::f64::consts::PI);
    let distance = offset.min(std::f64::consts::PI - offset);
    if distance <= eps_pole {
        return Err(Error::PoleProximity(format!(
            "kr = {kr} lies within {eps_pole} of an odd multiple of pi/2"
        )));
    }
    let tg = kr.tan();
    let denominator = a + b * tg;
    if denominator.abs() <= eps_pole {
        return Err(Error::PoleProximity(format!(
            "|a + b tan(kr)| = {} is below {eps_pole}",
            denominator.abs()
        )));
    }
    let exponent = -kr * ((b - a * tg) / denominator).abs();
    Ok(p.prefactor(geom.r()) * (a * kr.cos() + b * kr.sin()) * exponent.exp() * geom.k_dot_r().cos())
}

/// Bouguer–Lambert–Beer attenuation `I = I₀e^{−kr}`; negative `k` amplifies.
pub fn attenuate(i0: f64, k_medium: f64, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidInput(format!("path length must be non-negative, got {r}")));
    }
    Ok(i0 * (-k_medium * r).exp())
}

/// Whether a resonant photon is exchanged within one wavelength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExchangeReport {
    /// Mean absorption length `1/k`, infinite for a non-absorbing medium.
    pub mean_range: f64,
    /// Coefficient the medium must exceed, `1/λ`.
    pub k_required: f64,
    /// `k·λ > 1`.
    pub feasible: bool,
    /// Quoted optical-region threshold in cm⁻¹, independent of `k_required`.
    pub optical_reference_k_per_cm: f64,
}

pub fn exchange_feasibility(k_medium: f64, lambda: f64) -> Result<ExchangeReport> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidInput(format!("wavelength must be positive, got {lambda}")));
    }
    let absorbing = k_medium > 0.0;
    Ok(ExchangeReport {
        mean_range: if absorbing { 1.0 / k_medium } else { f64::INFINITY },
        k_required: 1.0 / lambda,
        feasible: absorbing && k_medium * lambda > 1.0,
        optical_reference_k_per_cm: OPTICAL_REFERENCE_K_PER_CM,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeReport {
    pub weak_field: ValidityReport,
    pub exchange_feasible: bool,
    pub k_required: f64,
    pub mean_range: f64,
    pub intensity_at_r: f64,
    pub optical_reference_k_per_cm: f64,
}

/// Weak-field, attenuation and photon-exchange checks for one configuration.
pub fn regime_report(
    atom: &TwoLevelAtom,
    field: &DriveField,
    hbar: f64,
    k_medium: f64,
    lambda: f64,
    r: f64,
) -> Result<RegimeReport> {
    let weak_field = check_weak_field(atom, field, hbar)?;
    let exchange = exchange_feasibility(k_medium, lambda)?;
    Ok(RegimeReport {
        weak_field,
        exchange_feasible: exchange.feasible,
        k_required: exchange.k_required,
        mean_range: exchange.mean_range,
        intensity_at_r: attenuate(field.intensity, k_medium, r)?,
        optical_reference_k_per_cm: exchange.optical_reference_k_per_cm,
    })
}
