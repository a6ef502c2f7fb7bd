//! Plain-text relaxation set files.
//!
//! ```text
//! # relaxfit-set kappa0=4.0155e-10 provenance=1f0c...
//! 1 6.2831853071795862e5 <density> <step> <weight>
//! ```
//!
//! Values are written with 17 significant digits so a file read back yields
//! the same doubles. Lines with two fields (`omega weight`) are accepted for
//! externally supplied sets; the header is then optional and κ₀ comes from
//! the configured medium.

use std::fmt::Write as _;
use std::path::Path;

use relaxfit_core::{RelaxationMechanism, RelaxationSet};

use crate::error::{CliError, Result};

const MAGIC: &str = "relaxfit-set";

/// Provenance tag for sets that did not come from a fit.
pub const EXTERNAL: &str = "external";

pub fn format_set(set: &RelaxationSet, provenance: &str) -> String {
    let mut s = format!("# {MAGIC} kappa0={:.16e} provenance={provenance}\n", set.kappa0());
    for (i, m) in set.mechanisms().iter().enumerate() {
        // Infallible: writing into a String.
        let _ = writeln!(
            s,
            "{} {:.16e} {:.16e} {:.16e} {:.16e}",
            i + 1,
            m.omega_nu(),
            m.density(),
            m.step(),
            m.weight()
        );
    }
    s
}

pub fn read_set(path: &Path, kappa0: f64) -> Result<RelaxationSet> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_set(&text, kappa0).map_err(|(line, reason)| CliError::SetFile {
        path: path.to_path_buf(),
        reason: if line == 0 { reason } else { format!("line {line}: {reason}") },
    })
}

fn num(tok: &str, what: &str) -> std::result::Result<f64, String> {
    tok.parse::<f64>().map_err(|_| format!("{what}: cannot parse {tok:?}"))
}

/// Parses a set for a medium with compressibility `kappa0`. Errors carry a
/// 1-based line number (0 for whole-file problems).
pub fn parse_set(text: &str, kappa0: f64) -> std::result::Result<RelaxationSet, (usize, String)> {
    let mut header_seen = false;
    let mut mechanisms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() != Some(MAGIC) {
                continue;
            }
            if header_seen || !mechanisms.is_empty() {
                return Err((line_no, "header must come first and only once".into()));
            }
            header_seen = true;
            for w in words {
                if let Some(v) = w.strip_prefix("kappa0=") {
                    let k = num(v, "kappa0").map_err(|e| (line_no, e))?;
                    if (k - kappa0).abs() > 1e-12 * kappa0 {
                        return Err((
                            line_no,
                            format!("kappa0={k:e} does not match the configured medium ({kappa0:e})"),
                        ));
                    }
                }
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let m = match fields.as_slice() {
            [omega, weight] => {
                let omega = num(omega, "omega").map_err(|e| (line_no, e))?;
                let weight = num(weight, "weight").map_err(|e| (line_no, e))?;
                // Unit step keeps density·step = weight exact.
                RelaxationMechanism::from_parts(omega, weight, 1.0, weight)
            }
            [_, omega, density, step, weight] => {
                let v: Vec<f64> = [(omega, "omega"), (density, "density"), (step, "step"), (weight, "weight")]
                    .iter()
                    .map(|(t, w)| num(t, w))
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| (line_no, e))?;
                RelaxationMechanism::from_parts(v[0], v[1], v[2], v[3])
            }
            _ => {
                return Err((
                    line_no,
                    format!("expected 2 or 5 fields, found {}", fields.len()),
                ))
            }
        }
        .map_err(|e| (line_no, e.to_string()))?;
        mechanisms.push(m);
    }
    if !header_seen && mechanisms.is_empty() {
        return Err((0, "no header and no mechanisms".into()));
    }
    mechanisms.sort_by(|a, b| a.omega_nu().total_cmp(&b.omega_nu()));
    RelaxationSet::new(mechanisms, kappa0).map_err(|e| (0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use relaxfit_core::{build_relaxation_set, hz_to_angular, Medium, PowerLawTarget, SamplingMode};

    fn fitted() -> (RelaxationSet, f64) {
        let m = Medium::new(1540.0, 1050.0).unwrap();
        let t = PowerLawTarget::new(1.1, 3.45, hz_to_angular(1e6), hz_to_angular(1e5), hz_to_angular(3e7)).unwrap();
        (build_relaxation_set(&t, &m, 3, SamplingMode::PowerLaw).unwrap(), m.kappa0())
    }

    #[test]
    fn round_trip_is_exact() {
        let (set, k0) = fitted();
        let back = parse_set(&format_set(&set, "abc"), k0).unwrap();
        assert_eq!(back.len(), set.len());
        for (a, b) in set.mechanisms().iter().zip(back.mechanisms()) {
            assert_eq!(a.omega_nu().to_bits(), b.omega_nu().to_bits());
            assert_eq!(a.weight().to_bits(), b.weight().to_bits());
            assert_eq!(a.density().to_bits(), b.density().to_bits());
            assert_eq!(a.step().to_bits(), b.step().to_bits());
        }
    }

    #[test]
    fn header_only_is_lossless() {
        let set = parse_set("# relaxfit-set kappa0=4e-10 provenance=external\n", 4e-10).unwrap();
        assert!(set.is_empty());
    }

    #[test]
    fn external_pairs_are_sorted() {
        let set = parse_set("# literature set\n6e7 1e-12\n6e5 2e-12\n", 4e-10).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.mechanisms()[0].omega_nu(), 6e5);
        assert_eq!(set.mechanisms()[1].weight(), 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_set("", 4e-10).unwrap_err().0, 0);
        assert_eq!(parse_set("   \n\n", 4e-10).unwrap_err().0, 0);
        assert_eq!(parse_set("1 2 3\n", 4e-10).unwrap_err().0, 1);
        assert_eq!(parse_set("6e5 x\n", 4e-10).unwrap_err().0, 1);
        assert_eq!(parse_set("# relaxfit-set kappa0=5e-10\n", 4e-10).unwrap_err().0, 1);
        // Σw ≥ κ₀ is unphysical.
        assert!(parse_set("6e5 5e-10\n", 4e-10).is_err());
        // Weight inconsistent with density·step.
        assert!(parse_set("1 6e5 1e-17 1e5 5e-12\n", 4e-10).is_err());
    }
}
