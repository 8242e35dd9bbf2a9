//! Self-check report: parity of the two couplings, Monte-Carlo versus closed
//! form orientation average, and agreement of the two driven-potential
//! evaluators.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::commands::{geometry, VERSION};
use super::config::RunConfig;
use super::CliError;
use crate::dipole::{averaged_pair_energy, mc_orientation_average, OrientationMode, PairGeometry, SphereSampler};
use crate::diraclike::parity_audit_with;
use crate::driven::{driven_potential, driven_potential_naive_with, frequency_coefficients, DrivenPairParams};
use crate::math::{alpha, Axis, Mat4};

/// Monte-Carlo acceptance band in standard errors.
pub const MC_Z_LIMIT: f64 = 4.0;

/// Relative agreement required between the stable and literal evaluators.
pub const AGREEMENT_TOL: f64 = 1e-10;

/// Pole clearance of agreement points, in units of `eps_pole`.
pub const POLE_CLEARANCE: f64 = 1e3;

#[derive(Debug, Clone, PartialEq)]
pub struct AuditOutcome {
    pub report: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgreementSummary {
    pub n_points: usize,
    pub max_rel_diff: f64,
}

fn distance_to_odd_half_pi(x: f64) -> f64 {
    let off = (x - std::f64::consts::FRAC_PI_2).rem_euclid(std::f64::consts::PI);
    off.min(std::f64::consts::PI - off)
}

/// `|s − n| / max(|s|, |n|)`, zero when both vanish.
pub fn relative_diff(s: f64, n: f64) -> f64 {
    let scale = s.abs().max(n.abs());
    if scale == 0.0 {
        0.0
    } else {
        (s - n).abs() / scale
    }
}

/// Draws one random parameter set and geometry whose phases stay at least
/// `clearance` away from every pole of either evaluator.
pub fn random_pole_free_point(rng: &mut ChaCha8Rng, clearance: f64) -> (DrivenPairParams, PairGeometry) {
    let mut dirs = SphereSampler::new(rng.gen());
    loop {
        let p = DrivenPairParams {
            mu: rng.gen_range(0.5..2.0),
            i0: rng.gen_range(0.5..2.0),
            beta_pop: rng.gen_range(-1.0..1.0),
            gamma1: rng.gen_range(0.2..3.0),
            gamma2: rng.gen_range(0.2..3.0),
            delta1: rng.gen_range(-5.0..5.0),
            delta2: rng.gen_range(-5.0..5.0),
        };
        let k = rng.gen_range(0.1..3.0);
        let r = rng.gen_range(0.1..5.0);
        let geom = PairGeometry::with_wavenumber(dirs.sample().scale(r), k, dirs.sample().scale(k))
            .expect("sampled geometry is valid");
        let c = frequency_coefficients(&p).expect("sampled damping is positive");
        let kr = geom.kr();
        let clear = distance_to_odd_half_pi(kr) > clearance
            && (c.a + c.b * kr.tan()).abs() > clearance
            && distance_to_odd_half_pi(c.phase() - kr) > clearance;
        if clear {
            return (p, geom);
        }
    }
}

pub fn agreement_sample(seed: u64, n_points: usize, eps_pole: f64) -> Result<AgreementSummary, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_rel_diff: f64 = 0.0;
    for _ in 0..n_points {
        let (p, geom) = random_pole_free_point(&mut rng, POLE_CLEARANCE * eps_pole);
        let s = driven_potential(&p, &geom)?;
        let n = driven_potential_naive_with(&p, &geom, eps_pole)?;
        max_rel_diff = max_rel_diff.max(relative_diff(s, n));
    }
    Ok(AgreementSummary { n_points, max_rel_diff })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn cmd_audit(cfg: &RunConfig) -> Result<AuditOutcome, CliError> {
    cmd_audit_with(cfg, alpha)
}

/// Audit with an injectable α constructor.
pub fn cmd_audit_with(cfg: &RunConfig, alpha_of: impl Fn(Axis) -> Mat4) -> Result<AuditOutcome, CliError> {
    let p = &cfg.params;
    let mut out = String::new();
    let _ = writeln!(out, "twolevel-toolkit {VERSION} audit");

    let parity = parity_audit_with(alpha_of);
    let parity_ok = parity.confirms_pseudoscalar();
    let _ = writeln!(
        out,
        "[{}] parity: alpha_is_polar={:?} sigma_has_compensator={} max_residual={:.3e}",
        verdict(parity_ok),
        parity.alpha_is_polar,
        parity.sigma_has_compensator,
        parity.max_residual
    );

    let geom = geometry(p, p.r)?;
    let est = mc_orientation_average(p.dmag, &geom, cfg.mc.n_samples, cfg.mc.seed, OrientationMode::Correlated)?;
    let closed = averaged_pair_energy(p.dmag, geom.r(), geom.k())?;
    let z = est.z_score(closed);
    let mc_ok = z <= MC_Z_LIMIT;
    let _ = writeln!(
        out,
        "[{}] orientation average: d={} r={} k={} n={} seed={} rng=\"{}\"",
        verdict(mc_ok),
        p.dmag,
        geom.r(),
        geom.k(),
        est.n_samples,
        est.seed,
        est.rng
    );
    let _ = writeln!(
        out,
        "       mc=({:.12e}, {:.12e}) stderr=({:.3e}, {:.3e}) closed=({:.12e}, {:.12e}) z={:.3} limit={}",
        est.mean.re, est.mean.im, est.stderr_re, est.stderr_im, closed.re, closed.im, z, MC_Z_LIMIT
    );

    let agree = agreement_sample(cfg.mc.seed, cfg.mc.n_agreement, p.eps_pole)?;
    let agree_ok = agree.max_rel_diff < AGREEMENT_TOL;
    let _ = writeln!(
        out,
        "[{}] driven potential stable vs literal: points={} max_rel_diff={:.3e} limit={:e}",
        verdict(agree_ok),
        agree.n_points,
        agree.max_rel_diff,
        AGREEMENT_TOL
    );

    let passed = parity_ok && mc_ok && agree_ok;
    let _ = writeln!(out, "overall: {}", verdict(passed));
    Ok(AuditOutcome { report: out, passed })
}
