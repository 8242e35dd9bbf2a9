//! JSON run configuration.
//!
//! Unknown keys anywhere in the document are rejected and reported with
//! their full key path. Command-line overrides are applied before validation.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Sweep,
    Dynamics,
    Audit,
    Regime,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Sweep => "sweep",
            Command::Dynamics => "dynamics",
            Command::Audit => "audit",
            Command::Regime => "regime",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Unaveraged retarded pair energy.
    PairRaw,
    /// Orientation-averaged energy with the drive phase factor.
    PairAveraged,
    /// Laser-driven interatomic potential.
    Driven,
    /// Two-level rotating-frame dynamics.
    Bloch2,
    /// 4-spinor dynamics.
    Dirac4,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::PairRaw => "pair_raw",
            Model::PairAveraged => "pair_averaged",
            Model::Driven => "driven",
            Model::Bloch2 => "bloch2",
            Model::Dirac4 => "dirac4",
        }
    }

    pub fn is_potential(self) -> bool {
        matches!(self, Model::PairRaw | Model::PairAveraged | Model::Driven)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// Every physical parameter any model reads. Fields a model does not use are
/// ignored by it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Params {
    // geometry
    pub k: f64,
    pub r_dir: [f64; 3],
    pub k_dir: [f64; 3],
    pub r: f64,
    // dipoles
    pub d1: [f64; 3],
    pub d2: [f64; 3],
    pub dmag: f64,
    // driven pair
    pub mu: f64,
    pub i0: f64,
    pub beta_pop: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub eps_pole: f64,
    // two-level atom and drive
    pub e0: f64,
    pub gamma: f64,
    pub omega0: f64,
    pub omega_a: f64,
    pub hbar: f64,
    // 4-spinor
    pub p: [f64; 3],
    pub efield: [f64; 3],
    pub omega: f64,
    pub c: f64,
    // medium
    pub k_medium: f64,
    pub lambda: f64,
    /// Initial amplitudes as `[re, im]` pairs; defaults to the first basis state.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<[f64; 2]>>,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            k: 1.0,
            r_dir: [1.0, 0.0, 0.0],
            k_dir: [1.0, 0.0, 0.0],
            r: 1.0,
            d1: [0.0, 0.0, 1.0],
            d2: [0.0, 0.0, 1.0],
            dmag: 1.0,
            mu: 1.0,
            i0: 1.0,
            beta_pop: 1.0,
            gamma1: 1.0,
            gamma2: 1.0,
            delta1: 0.0,
            delta2: 0.0,
            eps_pole: crate::driven::DEFAULT_EPS_POLE,
            e0: 1.0,
            gamma: 1.0,
            omega0: 0.0,
            omega_a: 0.0,
            hbar: 1.0,
            p: [0.0; 3],
            efield: [0.0; 3],
            omega: 1.0,
            c: 1.0,
            k_medium: 1.0,
            lambda: 1.0,
            initial: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub n_points: Option<usize>,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeBlock {
    pub duration: Option<f64>,
    pub dt: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct McBlock {
    pub n_samples: usize,
    pub seed: u64,
    /// Points in the stable/literal agreement sample of the audit.
    pub n_agreement: usize,
}

impl Default for McBlock {
    fn default() -> Self {
        Self { n_samples: 100_000, seed: 1, n_agreement: 1_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    command: Option<Command>,
    model: Option<Model>,
    #[serde(default)]
    params: Params,
    #[serde(default)]
    grid: GridBlock,
    #[serde(default)]
    time: TimeBlock,
    #[serde(default)]
    mc: McBlock,
    output: Option<PathBuf>,
}

/// Command-line values that replace the config key of the same name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub output: Option<PathBuf>,
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub n_points: Option<usize>,
    pub seed: Option<u64>,
    pub n_samples: Option<usize>,
    pub dt: Option<f64>,
    pub duration: Option<f64>,
}

/// Validated radial grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

impl Grid {
    /// Grid points in increasing order.
    pub fn points(&self) -> Vec<f64> {
        let n = self.n_points;
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.r_min;
                }
                if i == n - 1 {
                    return self.r_max;
                }
                let s = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.r_min + s * (self.r_max - self.r_min),
                    Spacing::Log => (self.r_min.ln() + s * (self.r_max.ln() - self.r_min.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeGrid {
    pub duration: f64,
    pub dt: f64,
}

/// Fully validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub model: Option<Model>,
    pub params: Params,
    pub grid: Option<Grid>,
    pub time: Option<TimeGrid>,
    pub mc: McBlock,
    pub output: Option<PathBuf>,
}

fn bad(key: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{key}: {msg}"))
}

/// Parses `text` for `command`, applies `overrides`, then validates.
pub fn parse_config(text: &str, command: Command, overrides: &Overrides) -> Result<RunConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let mut raw: RawConfig = serde_path_to_error::deserialize(de)
        .map_err(|e| CliError::Config(format!("{}: {}", e.path(), e.inner())))?;

    if let Some(c) = raw.command {
        if c != command {
            return Err(bad("command", format!("config says `{}` but `{}` was requested", c.name(), command.name())));
        }
    }
    apply_overrides(&mut raw, overrides);
    validate(raw, command)
}

fn apply_overrides(raw: &mut RawConfig, o: &Overrides) {
    if let Some(v) = &o.output {
        raw.output = Some(v.clone());
    }
    if o.r_min.is_some() {
        raw.grid.r_min = o.r_min;
    }
    if o.r_max.is_some() {
        raw.grid.r_max = o.r_max;
    }
    if o.n_points.is_some() {
        raw.grid.n_points = o.n_points;
    }
    if let Some(v) = o.seed {
        raw.mc.seed = v;
    }
    if let Some(v) = o.n_samples {
        raw.mc.n_samples = v;
    }
    if o.dt.is_some() {
        raw.time.dt = o.dt;
    }
    if o.duration.is_some() {
        raw.time.duration = o.duration;
    }
}

fn validate(raw: RawConfig, command: Command) -> Result<RunConfig, CliError> {
    let model = match command {
        Command::Sweep => {
            let m = raw.model.ok_or_else(|| bad("model", "required for sweep"))?;
            if !m.is_potential() {
                return Err(bad("model", format!("`{}` is not a potential model", m.name())));
            }
            Some(m)
        }
        Command::Dynamics => {
            let m = raw.model.ok_or_else(|| bad("model", "required for dynamics"))?;
            if !matches!(m, Model::Bloch2 | Model::Dirac4) {
                return Err(bad("model", format!("`{}` has no dynamics", m.name())));
            }
            Some(m)
        }
        Command::Audit | Command::Regime => raw.model,
    };

    let grid = match command {
        Command::Sweep => Some(validate_grid(&raw.grid)?),
        _ => None,
    };
    let time = match command {
        Command::Dynamics => Some(validate_time(&raw.time)?),
        _ => None,
    };

    let p = &raw.params;
    for (key, v) in [("params.hbar", p.hbar), ("params.c", p.c)] {
        if !(v > 0.0) {
            return Err(bad(key, format!("must be positive, got {v}")));
        }
    }
    if !(p.eps_pole > 0.0) {
        return Err(bad("params.eps_pole", format!("must be positive, got {}", p.eps_pole)));
    }
    if let (Some(init), Some(m)) = (&p.initial, model) {
        let want = match m {
            Model::Bloch2 => 2,
            Model::Dirac4 => 4,
            _ => init.len(),
        };
        if init.len() != want {
            return Err(bad("params.initial", format!("expected {want} amplitudes, got {}", init.len())));
        }
    }
    if command == Command::Audit && raw.mc.n_samples < crate::dipole::MIN_SAMPLES {
        return Err(bad("mc.n_samples", format!("must be at least {}", crate::dipole::MIN_SAMPLES)));
    }

    Ok(RunConfig {
        command,
        model,
        params: raw.params,
        grid,
        time,
        mc: raw.mc,
        output: raw.output,
    })
}

fn validate_grid(g: &GridBlock) -> Result<Grid, CliError> {
    let r_min = g.r_min.ok_or_else(|| bad("grid.r_min", "missing"))?;
    let r_max = g.r_max.ok_or_else(|| bad("grid.r_max", "missing"))?;
    let n_points = g.n_points.ok_or_else(|| bad("grid.n_points", "missing"))?;
    if !(r_min > 0.0) || !r_min.is_finite() {
        return Err(bad("grid.r_min", format!("must be positive (grid may not reach r = 0), got {r_min}")));
    }
    if !(r_max >= r_min) || !r_max.is_finite() {
        return Err(bad("grid.r_max", format!("must be finite and at least r_min, got {r_max}")));
    }
    if n_points < 2 {
        return Err(bad("grid.n_points", format!("must be at least 2, got {n_points}")));
    }
    Ok(Grid { r_min, r_max, n_points, spacing: g.spacing })
}

fn validate_time(t: &TimeBlock) -> Result<TimeGrid, CliError> {
    let duration = t.duration.ok_or_else(|| bad("time.duration", "missing"))?;
    let dt = t.dt.ok_or_else(|| bad("time.dt", "missing"))?;
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(bad("time.dt", format!("must be positive, got {dt}")));
    }
    if !(duration >= 0.0) || !duration.is_finite() {
        return Err(bad("time.duration", format!("must be non-negative, got {duration}")));
    }
    Ok(TimeGrid { duration, dt })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SWEEP: &str = r#"{
        "command": "sweep",
        "model": "driven",
        "grid": {"r_min": 0.5, "r_max": 2.0, "n_points": 3}
    }"#;

    #[test]
    fn parses_sweep() {
        let cfg = parse_config(SWEEP, Command::Sweep, &Overrides::default()).unwrap();
        assert_eq!(cfg.model, Some(Model::Driven));
        assert_eq!(cfg.grid.unwrap().points(), vec![0.5, 1.25, 2.0]);
    }

    #[test]
    fn unknown_key_is_named() {
        let text = r#"{"model": "driven", "params": {"gamma3": 1.0}, "grid": {"r_min": 1, "r_max": 2, "n_points": 2}}"#;
        let err = parse_config(text, Command::Sweep, &Overrides::default()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("params.gamma3"), "{msg}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn flag_overrides_file() {
        let text = r#"{"model": "driven", "grid": {"r_min": 1, "r_max": 2, "n_points": 2}}"#;
        let o = Overrides { r_max: Some(5.0), ..Default::default() };
        let cfg = parse_config(text, Command::Sweep, &o).unwrap();
        assert_eq!(cfg.grid.unwrap().r_max, 5.0);
    }

    #[test]
    fn grid_through_origin_is_rejected() {
        let text = r#"{"model": "pair_raw", "grid": {"r_min": 0, "r_max": 2, "n_points": 4}}"#;
        let err = parse_config(text, Command::Sweep, &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("grid.r_min"));
        let text = r#"{"model": "pair_raw", "grid": {"r_min": -1, "r_max": 2, "n_points": 4}}"#;
        assert!(parse_config(text, Command::Sweep, &Overrides::default()).is_err());
    }

    #[test]
    fn dynamics_requires_positive_step() {
        let text = r#"{"model": "bloch2", "time": {"duration": 1.0, "dt": 0.0}}"#;
        let err = parse_config(text, Command::Dynamics, &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("time.dt"));
        let o = Overrides { dt: Some(0.1), ..Default::default() };
        assert!(parse_config(text, Command::Dynamics, &o).is_ok());
    }

    #[test]
    fn command_mismatch_and_malformed_json() {
        assert!(parse_config(SWEEP, Command::Audit, &Overrides::default()).is_err());
        assert!(parse_config("{", Command::Audit, &Overrides::default()).is_err());
    }

    #[test]
    fn log_grid_is_geometric() {
        let g = Grid { r_min: 0.1, r_max: 10.0, n_points: 3, spacing: Spacing::Log };
        let p = g.points();
        assert!((p[1] - 1.0).abs() < 1e-15);
        assert_eq!(p[2], 10.0);
    }
}
