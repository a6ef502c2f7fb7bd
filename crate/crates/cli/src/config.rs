//! TOML job configuration.
//!
//! ```toml
//! [medium]
//! c0 = 1540.0          # m/s
//! rho0 = 1050.0        # kg/m^3
//!
//! [target]
//! eta = 1.1
//! alpha_ref = 0.3
//! alpha_ref_unit = "db_per_cm_at_ref"   # or "np_per_m"
//! f_ref = 1e6          # Hz
//! f_lo = 1e5           # Hz, evaluation band
//! f_hi = 3e7
//!
//! [model]
//! n_mechanisms = 3
//! mode = "power_law"   # or "zener_exact"
//! tau_sigma_margin = 1e3
//! # f_relax_lo / f_relax_hi: band the mechanisms are placed in
//! # (defaults to the evaluation band)
//!
//! [output]
//! grid_points = 200
//! # grid_f_lo / grid_f_hi default to the evaluation band
//! set_file = "fit.set"
//! csv_file = "fit.csv"
//! ```
//!
//! Relative output paths are resolved against the config file's directory.

use std::path::{Path, PathBuf};

use relaxfit_core::{
    attenuation_db_per_cm_to_np_per_m, hz_to_angular, make_log_grid, BuildOptions, FrequencyGrid, Medium,
    PowerLawTarget, SamplingMode,
};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub medium: MediumSection,
    pub target: TargetSection,
    pub model: ModelSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumSection {
    pub c0: f64,
    pub rho0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaUnit {
    NpPerM,
    /// dB/cm at `f_ref`.
    DbPerCmAtRef,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSection {
    pub eta: f64,
    pub alpha_ref: f64,
    pub alpha_ref_unit: AlphaUnit,
    pub f_ref: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeName {
    ZenerExact,
    #[default]
    PowerLaw,
}

fn default_margin() -> f64 {
    1e3
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub n_mechanisms: usize,
    #[serde(default)]
    pub mode: ModeName,
    #[serde(default = "default_margin")]
    pub tau_sigma_margin: f64,
    pub f_relax_lo: Option<f64>,
    pub f_relax_hi: Option<f64>,
}

fn default_grid_points() -> usize {
    200
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    pub grid_f_lo: Option<f64>,
    pub grid_f_hi: Option<f64>,
    pub set_file: Option<PathBuf>,
    pub csv_file: Option<PathBuf>,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            grid_points: default_grid_points(),
            grid_f_lo: None,
            grid_f_hi: None,
            set_file: None,
            csv_file: None,
        }
    }
}

/// A validated job: every model invariant already checked.
#[derive(Debug, Clone)]
pub struct Job {
    pub medium: Medium,
    /// Power law over the evaluation band.
    pub target: PowerLawTarget,
    /// Same power law over the band the mechanisms are placed in.
    pub relax_target: PowerLawTarget,
    pub n_mechanisms: usize,
    pub mode: SamplingMode,
    pub build: BuildOptions,
    pub grid: FrequencyGrid,
    pub set_file: Option<PathBuf>,
    pub csv_file: Option<PathBuf>,
    /// Hex SHA-256 prefix of the config text.
    pub provenance: String,
}

fn config_err(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

pub fn load(path: &Path) -> Result<Job> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse(&text, base)
}

pub fn parse(text: &str, base_dir: &Path) -> Result<Job> {
    let cfg: JobConfig = toml::from_str(text).map_err(config_err)?;
    cfg.validate(text, base_dir)
}

impl JobConfig {
    fn validate(&self, text: &str, base_dir: &Path) -> Result<Job> {
        let medium = Medium::new(self.medium.c0, self.medium.rho0).map_err(config_err)?;
        let t = &self.target;
        let alpha_ref = match t.alpha_ref_unit {
            AlphaUnit::NpPerM => t.alpha_ref,
            AlphaUnit::DbPerCmAtRef => attenuation_db_per_cm_to_np_per_m(t.alpha_ref),
        };
        let target = PowerLawTarget::new(
            t.eta,
            alpha_ref,
            hz_to_angular(t.f_ref),
            hz_to_angular(t.f_lo),
            hz_to_angular(t.f_hi),
        )
        .map_err(config_err)?;

        let m = &self.model;
        if m.n_mechanisms == 0 {
            return Err(CliError::Config("model.n_mechanisms must be at least 1".into()));
        }
        if !(m.tau_sigma_margin >= 1.0 && m.tau_sigma_margin.is_finite()) {
            return Err(CliError::Config("model.tau_sigma_margin must be a finite number >= 1".into()));
        }
        let relax_target = target
            .with_band(
                hz_to_angular(m.f_relax_lo.unwrap_or(t.f_lo)),
                hz_to_angular(m.f_relax_hi.unwrap_or(t.f_hi)),
            )
            .map_err(|e| CliError::Config(format!("model relaxation band: {e}")))?;

        let o = &self.output;
        let grid = make_log_grid(
            hz_to_angular(o.grid_f_lo.unwrap_or(t.f_lo)),
            hz_to_angular(o.grid_f_hi.unwrap_or(t.f_hi)),
            o.grid_points,
        )
        .map_err(|e| CliError::Config(format!("output grid: {e}")))?;

        Ok(Job {
            medium,
            target,
            relax_target,
            n_mechanisms: m.n_mechanisms,
            mode: match m.mode {
                ModeName::ZenerExact => SamplingMode::ZenerExact,
                ModeName::PowerLaw => SamplingMode::PowerLaw,
            },
            build: BuildOptions {
                tau_sigma_margin: m.tau_sigma_margin,
            },
            grid,
            set_file: o.set_file.as_ref().map(|p| base_dir.join(p)),
            csv_file: o.csv_file.as_ref().map(|p| base_dir.join(p)),
            provenance: provenance_hash(text),
        })
    }
}

pub fn provenance_hash(text: &str) -> String {
    use sha2::{Digest, Sha256};
    let digest = Sha256::digest(text.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}
