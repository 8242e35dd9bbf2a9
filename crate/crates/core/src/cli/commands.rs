//! Sweep, dynamics and regime commands: dispatch into the domain modules and
//! serialisation of what they return.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::config::{Model, Params, RunConfig};
use super::csv::CsvTable;
use super::CliError;
use crate::dipole::{pair_energy, phased_average, DipoleMoment, PairGeometry};
use crate::diraclike::{diraclike_hamiltonian, propagate4, DiracLikeParams};
use crate::driven::{evaluate_driven, regime_report, DrivenPairParams};
use crate::math::{Spinor, Trajectory, Vec3};
use crate::twolevel::{propagate2, rwa_hamiltonian, DriveField, TwoLevelAtom};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn unit(v: [f64; 3], key: &str) -> Result<Vec3, CliError> {
    Vec3::from_array(v)
        .normalized()
        .ok_or_else(|| CliError::Config(format!("{key}: must be a non-zero vector")))
}

/// Pair geometry at separation `r` along `params.r_dir` with wavevector
/// `params.k · params.k_dir`.
pub fn geometry(params: &Params, r: f64) -> Result<PairGeometry, CliError> {
    let rdir = unit(params.r_dir, "params.r_dir")?;
    let kdir = unit(params.k_dir, "params.k_dir")?;
    Ok(PairGeometry::with_wavenumber(rdir.scale(r), params.k, kdir.scale(params.k))?)
}

pub fn driven_params(p: &Params) -> Result<DrivenPairParams, CliError> {
    Ok(DrivenPairParams::new(p.mu, p.i0, p.beta_pop, p.gamma1, p.gamma2, p.delta1, p.delta2)?)
}

pub fn atom_and_field(p: &Params) -> Result<(TwoLevelAtom, DriveField), CliError> {
    let atom = TwoLevelAtom::new(p.mu, p.gamma, p.omega_a)?;
    let field = DriveField::new(p.e0, Vec3::new(0.0, 0.0, 1.0), p.omega0, Vec3::ZERO, p.i0)?;
    Ok((atom, field))
}

fn params_json(p: &Params) -> String {
    serde_json::to_string(p).expect("parameter block serialises")
}

fn provenance(table: &mut CsvTable, cfg: &RunConfig, model: Model) {
    table.comment(format!("twolevel-toolkit {VERSION} {} model={}", cfg.command.name(), model.name()));
    table.comment(format!("params={}", params_json(&cfg.params)));
    if let Some(g) = &cfg.grid {
        table.comment(format!(
            "grid=r_min:{} r_max:{} n_points:{} spacing:{:?}",
            g.r_min, g.r_max, g.n_points, g.spacing
        ));
    }
    if let Some(t) = &cfg.time {
        table.comment(format!("time=duration:{} dt:{}", t.duration, t.dt));
    }
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<CsvTable, CliError> {
    let model = cfg.model.ok_or_else(|| CliError::Config("model: required for sweep".into()))?;
    let grid = cfg.grid.ok_or_else(|| CliError::Config("grid: required for sweep".into()))?;
    let p = &cfg.params;

    let mut table = match model {
        Model::Driven => CsvTable::new(&["r", "U_re", "U_im", "a", "b", "exponent_arg"]),
        _ => CsvTable::new(&["r", "U_re", "U_im"]),
    };
    provenance(&mut table, cfg, model);

    for r in grid.points() {
        let geom = geometry(p, r)?;
        match model {
            Model::PairRaw => {
                let d1 = DipoleMoment(Vec3::from_array(p.d1));
                let d2 = DipoleMoment(Vec3::from_array(p.d2));
                let u = pair_energy(&d1, &d2, &geom);
                table.push(vec![r, u.re, u.im]);
            }
            Model::PairAveraged => {
                table.push(vec![r, phased_average(p.dmag, &geom), 0.0]);
            }
            Model::Driven => {
                let ev = evaluate_driven(&driven_params(p)?, &geom)?;
                table.push(vec![r, ev.value, 0.0, ev.coefficients.a, ev.coefficients.b, ev.exponent_arg]);
            }
            Model::Bloch2 | Model::Dirac4 => {
                return Err(CliError::Config(format!("model: `{}` is not a potential model", model.name())))
            }
        }
    }
    table.check_finite(&["exponent_arg"])?;
    Ok(table)
}

fn initial_state<const N: usize>(p: &Params) -> Result<Spinor<N>, CliError> {
    match &p.initial {
        None => Ok(Spinor::basis(0)),
        Some(v) => {
            if v.len() != N {
                return Err(CliError::Config(format!("params.initial: expected {N} amplitudes, got {}", v.len())));
            }
            let amps = std::array::from_fn(|i| Complex64::new(v[i][0], v[i][1]));
            Spinor::new(amps).map_err(|e| CliError::Config(format!("params.initial: {e}")))
        }
    }
}

fn trajectory_table<const N: usize>(traj: &Trajectory<N>, table: &mut CsvTable) {
    for s in &traj.samples {
        let mut row = Vec::with_capacity(N + 2);
        row.push(s.time);
        row.extend_from_slice(&s.populations);
        row.push(s.norm());
        table.push(row);
    }
}

pub fn cmd_dynamics(cfg: &RunConfig) -> Result<CsvTable, CliError> {
    let model = cfg.model.ok_or_else(|| CliError::Config("model: required for dynamics".into()))?;
    let time = cfg.time.ok_or_else(|| CliError::Config("time: required for dynamics".into()))?;
    let p = &cfg.params;
    let mut table = match model {
        Model::Bloch2 => CsvTable::new(&["t", "P1", "P2", "norm"]),
        Model::Dirac4 => CsvTable::new(&["t", "P1", "P2", "P3", "P4", "norm"]),
        _ => return Err(CliError::Config(format!("model: `{}` has no dynamics", model.name()))),
    };
    provenance(&mut table, cfg, model);

    match model {
        Model::Bloch2 => {
            let (atom, field) = atom_and_field(p)?;
            let h = rwa_hamiltonian(&atom, &field, p.hbar);
            let traj = propagate2(initial_state::<2>(p)?, &h, p.hbar, time.duration, time.dt)?;
            trajectory_table(&traj, &mut table);
        }
        Model::Dirac4 => {
            let prm = DiracLikeParams::new(
                Vec3::from_array(p.p),
                p.omega,
                p.mu,
                Vec3::from_array(p.efield),
                p.c,
                p.hbar,
            )?;
            let h = diraclike_hamiltonian(&prm);
            let traj = propagate4(initial_state::<4>(p)?, &h, p.hbar, time.duration, time.dt)?;
            trajectory_table(&traj, &mut table);
        }
        _ => unreachable!(),
    }
    table.check_finite(&[])?;
    Ok(table)
}

pub fn cmd_regime(cfg: &RunConfig) -> Result<String, CliError> {
    let p = &cfg.params;
    let (atom, field) = atom_and_field(p)?;
    let rep = regime_report(&atom, &field, p.hbar, p.k_medium, p.lambda, p.r)?;
    let mut out = String::new();
    let _ = writeln!(out, "twolevel-toolkit {VERSION} regime");
    let _ = writeln!(out, "weak_field_ratio = {:.15e}", rep.weak_field.ratio);
    let _ = writeln!(out, "within_weak_field = {}", rep.weak_field.within_weak_field);
    let _ = writeln!(out, "k_medium = {:.15e}", p.k_medium);
    let _ = writeln!(out, "k_required = {:.15e}", rep.k_required);
    let _ = writeln!(out, "mean_exchange_range = {:.15e}", rep.mean_range);
    let _ = writeln!(out, "exchange_feasible = {}", rep.exchange_feasible);
    let _ = writeln!(out, "intensity_at_r = {:.15e}", rep.intensity_at_r);
    let _ = writeln!(
        out,
        "optical_region_reference_k_per_cm = {} (quoted threshold, not derived from k_required)",
        rep.optical_reference_k_per_cm
    );
    Ok(out)
}
