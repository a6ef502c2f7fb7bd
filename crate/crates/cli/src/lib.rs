//! Command-line front end for fitting relaxation sets to power-law
//! attenuation targets.
//!
//! Commands: `fit`, `eval`, `sweep` and `compare`, all driven by one TOML
//! config (see [`config`]). Exit codes: 0 success, 2 config or input error,
//! 3 numeric or physicality error.

pub mod config;
pub mod error;
pub mod setfile;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use relaxfit_core::{
    angular_to_hz, attenuation_np_per_m_to_db_per_cm, build_relaxation_set_with, max_rel_diff_unnormalized,
    normalize_to_target, set_dispersion_curve, DispersionCurve, FitReport, RelaxationSet, Sampling,
};

use crate::config::Job;
pub use crate::error::{CliError, Result};

/// Column order of the evaluation CSV.
pub const CSV_HEADER: [&str; 7] = [
    "f_Hz",
    "omega_rad_s",
    "alpha_np_per_m",
    "alpha_db_per_cm",
    "c_p_m_per_s",
    "rel_diff",
    "rel_diff_normalized",
];

/// TPa⁻¹ per Pa⁻¹.
const PER_TPA: f64 = 1e12;

#[derive(Debug, Parser)]
#[command(name = "relaxfit", version, about = "Fit discrete relaxation sets to power-law attenuation")]
pub struct Cli {
    /// Suppress the human-readable report.
    #[arg(long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ConfigArg {
    /// TOML job configuration.
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and calibrate a set, report it and save it.
    Fit {
        #[command(flatten)]
        config: ConfigArg,
        /// Set file to write (overrides output.set_file).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Evaluate a saved set over the output grid as CSV.
    Eval {
        #[command(flatten)]
        config: ConfigArg,
        /// Set file to read (defaults to output.set_file).
        #[arg(long, value_name = "PATH")]
        set: Option<PathBuf>,
        /// CSV to write (defaults to output.csv_file, then stdout).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Fit error for several mechanism counts.
    Sweep {
        #[command(flatten)]
        config: ConfigArg,
        /// Mechanism counts, comma separated.
        #[arg(long, value_name = "LIST", value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Fitted set against an external set, raw and normalized.
    Compare {
        #[command(flatten)]
        config: ConfigArg,
        /// External set file (`omega weight` lines or a saved set).
        #[arg(long, value_name = "PATH")]
        set: PathBuf,
    },
}

/// Runs one command, writing reports (and stdout CSV) to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Fit { config, out: path } => cmd_fit(&config::load(&config.config)?, path.as_deref(), cli.quiet, out),
        Command::Eval { config, set, out: path } => {
            let job = config::load(&config.config)?;
            let set_path = set
                .clone()
                .or_else(|| job.set_file.clone())
                .ok_or_else(|| CliError::Config("no set file: pass --set or output.set_file".into()))?;
            let set = setfile::read_set(&set_path, job.medium.kappa0())?;
            let csv = eval_csv(&job, &set)?;
            match path.clone().or_else(|| job.csv_file.clone()) {
                Some(p) => write_atomic(&p, csv.as_bytes()),
                None => out.write_all(csv.as_bytes()).map_err(stdout_err),
            }
        }
        Command::Sweep { config, n } => cmd_sweep(&config::load(&config.config)?, n, cli.quiet, out),
        Command::Compare { config, set } => {
            let job = config::load(&config.config)?;
            let external = setfile::read_set(set, job.medium.kappa0())?;
            cmd_compare(&job, &external, cli.quiet, out)
        }
    }
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Write {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

/// Write-to-temp-then-rename in the destination directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let werr = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(werr)?;
    tmp.write_all(bytes).map_err(werr)?;
    tmp.as_file().sync_all().map_err(werr)?;
    tmp.persist(path).map_err(|e| werr(e.error))?;
    Ok(())
}

pub fn build(job: &Job, n: usize) -> Result<RelaxationSet> {
    Ok(build_relaxation_set_with(&job.relax_target, &job.medium, n, job.mode, &job.build)?)
}

/// Normalized and raw fit quality of a set over the target band.
pub struct Quality {
    pub report: FitReport,
    pub raw: f64,
}

pub fn quality(job: &Job, set: &RelaxationSet) -> Result<Quality> {
    let curve = set_dispersion_curve(set, &job.medium, &job.grid)?;
    quality_of_curve(job, &curve)
}

fn quality_of_curve(job: &Job, curve: &DispersionCurve) -> Result<Quality> {
    let band = job.target.band();
    let (_, report) = normalize_to_target(curve, &job.target, band)?;
    let raw = max_rel_diff_unnormalized(curve, &job.target, band)?;
    Ok(Quality { report, raw })
}

fn cmd_fit(job: &Job, out_path: Option<&Path>, quiet: bool, out: &mut dyn Write) -> Result<()> {
    let set = build(job, job.n_mechanisms)?;
    let q = quality(job, &set)?;
    if !quiet {
        write_fit_report(job, &set, &q, out).map_err(stdout_err)?;
    }
    if let Some(p) = out_path.map(Path::to_path_buf).or_else(|| job.set_file.clone()) {
        write_atomic(&p, setfile::format_set(&set, &job.provenance).as_bytes())?;
    }
    if let Some(p) = &job.csv_file {
        write_atomic(p, eval_csv(job, &set)?.as_bytes())?;
    }
    Ok(())
}

fn write_fit_report(job: &Job, set: &RelaxationSet, q: &Quality, out: &mut dyn Write) -> std::io::Result<()> {
    let (lo, hi) = job.relax_target.band();
    writeln!(
        out,
        "{} mechanisms, mode {}, placed over {:.4} .. {:.4} MHz",
        set.len(),
        job.mode.as_str(),
        angular_to_hz(lo) / 1e6,
        angular_to_hz(hi) / 1e6
    )?;
    writeln!(
        out,
        "{:>3} {:>12} {:>14} {:>14} {:>14} {:>14}",
        "nu", "f [MHz]", "Omega [rad/s]", "density", "step [rad/s]", "weight [1/TPa]"
    )?;
    for (i, m) in set.mechanisms().iter().enumerate() {
        writeln!(
            out,
            "{:>3} {:>12.6} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6}",
            i + 1,
            angular_to_hz(m.omega_nu()) / 1e6,
            m.omega_nu(),
            m.density(),
            m.step(),
            m.weight() * PER_TPA
        )?;
    }
    if let Some(p) = set.provenance() {
        writeln!(out, "calibration scale: {:.10e}", p.calibration_scale)?;
        if let Sampling::Zener {
            alpha,
            tau_sigma,
            tau_epsilon,
        } = p.sampling
        {
            match tau_epsilon {
                Some(te) => writeln!(out, "zener: alpha = {alpha:.4}, tau_sigma = {tau_sigma:.6e} s, tau_epsilon = {te:.6e} s")?,
                None => writeln!(
                    out,
                    "zener: alpha = {alpha:.4}, tau_sigma = {tau_sigma:.6e} s, tau_epsilon not representable (scale > 1)"
                )?,
            }
        }
    }
    writeln!(
        out,
        "total weight: {:.6} 1/TPa ({:.4}% of kappa0)",
        set.total_weight() * PER_TPA,
        100.0 * set.total_weight() / set.kappa0()
    )?;
    write_quality_line(out, "fit", q)
}

fn write_quality_line(out: &mut dyn Write, label: &str, q: &Quality) -> std::io::Result<()> {
    let (lo, hi) = q.report.band;
    writeln!(
        out,
        "{label}: max_rel_diff normalized {:.4} (scale {:.6}), raw {:.4}, over {:.4} .. {:.4} MHz, {} samples",
        q.report.max_rel_diff,
        q.report.normalization_scale,
        q.raw,
        angular_to_hz(lo) / 1e6,
        angular_to_hz(hi) / 1e6,
        q.report.omega.len()
    )
}

/// One CSV row per grid sample; the normalized column is NaN when the
/// normalization is undefined (for instance a lossless set).
pub fn eval_csv(job: &Job, set: &RelaxationSet) -> Result<String> {
    let curve = set_dispersion_curve(set, &job.medium, &job.grid)?;
    let scale = normalize_to_target(&curve, &job.target, job.target.band())
        .map(|(s, _)| s)
        .unwrap_or(f64::NAN);
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Write {
        path: PathBuf::from("<csv>"),
        source: e.into(),
    };
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for ((&om, &a), &c) in curve.grid.samples().iter().zip(&curve.attenuation).zip(&curve.phase_velocity) {
        let g = a / job.target.attenuation(om);
        let row = [
            angular_to_hz(om),
            om,
            a,
            attenuation_np_per_m_to_db_per_cm(a),
            c,
            g - 1.0,
            scale * g - 1.0,
        ];
        w.write_record(row.iter().map(|v| format!("{v:e}"))).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| csv_err(e.into_error().into()))?;
    // Only ASCII was written.
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

fn cmd_sweep(job: &Job, ns: &[usize], quiet: bool, out: &mut dyn Write) -> Result<()> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut failed = 0;
    let mut numeric = false;
    let mut prev: Option<f64> = None;
    let mut monotone = true;
    if !quiet {
        writeln!(out, "{:>4} {:>12} {:>12}", "n", "normalized", "raw").map_err(stdout_err)?;
    }
    for &n in &ns {
        let result = if n == 0 {
            Err(CliError::Config("n must be at least 1".into()))
        } else {
            build(job, n).and_then(|set| quality(job, &set))
        };
        let line = match &result {
            Ok(q) => {
                if prev.is_some_and(|p| q.report.max_rel_diff > p) {
                    monotone = false;
                }
                prev = Some(q.report.max_rel_diff);
                format!("{n:>4} {:>12.6} {:>12.6}", q.report.max_rel_diff, q.raw)
            }
            Err(e) => {
                failed += 1;
                numeric |= e.exit_code() == 3;
                format!("{n:>4} failed: {e}")
            }
        };
        // Failures are always shown.
        if !quiet || result.is_err() {
            writeln!(out, "{line}").map_err(stdout_err)?;
        }
    }
    if !quiet && ns.len() > 1 && failed == 0 {
        let note = if monotone { "improves monotonically with n" } else { "does not improve monotonically with n" };
        writeln!(out, "normalized error {note}").map_err(stdout_err)?;
    }
    if failed > 0 {
        return Err(CliError::Sweep {
            failed,
            total: ns.len(),
            numeric,
        });
    }
    Ok(())
}

fn cmd_compare(job: &Job, external: &RelaxationSet, quiet: bool, out: &mut dyn Write) -> Result<()> {
    let fitted = build(job, job.n_mechanisms)?;
    let qf = quality(job, &fitted)?;
    let qe = quality(job, external)?;
    if !quiet {
        write_quality_line(out, &format!("fitted   ({} mechanisms)", fitted.len()), &qf).map_err(stdout_err)?;
        write_quality_line(out, &format!("external ({} mechanisms)", external.len()), &qe).map_err(stdout_err)?;
    }
    Ok(())
}
