use std::path::PathBuf;

use dkp_spectra::oracle::discretize::MIN_INTERVALS;
use dkp_spectra::oracle::report::{run_verification, VerificationConfig, VerificationReport};
use dkp_spectra::UnitSystem;
use serde_json::{Map, Value};

use crate::config::Format;
use crate::output::{write_text, VERSION};
use crate::{CliError, RunConfig, EXIT_VERIFICATION_FAILED};

pub const DEFAULT_REPORT: &str = "verify-report.kv";

/// Oracle sweep settings from the run configuration.
pub fn verification_config(cfg: &RunConfig) -> Result<VerificationConfig, CliError> {
    if cfg.units == UnitSystem::Si {
        return Err(CliError::Unsupported("the oracle sweep runs in natural units only".into()));
    }
    let mut v = VerificationConfig::default();
    if let Some(l) = &cfg.lambdas {
        if let Some(bad) = l.iter().find(|l| !(**l > 0.0)) {
            return Err(CliError::Unsupported(format!(
                "the oracle covers AdS only (λ > 0); λ = {bad} has no bounded radial domain"
            )));
        }
        v.lambdas = l.clone();
    }
    for (key, value) in [("mass", cfg.mass), ("omega", cfg.omega)] {
        if let Some(x) = value {
            if !(x.is_finite() && x > 0.0) {
                return Err(CliError::Usage(format!("--{key}: must be positive, got {x}")));
            }
        }
    }
    v.mass = cfg.mass.unwrap_or(v.mass);
    v.omega = cfg.omega.unwrap_or(v.omega);
    if let Some(s) = &cfg.sectors {
        v.sectors = s.clone();
    }
    v.n_max = cfg.n_max.unwrap_or(v.n_max);
    v.j_max = cfg.j_max.unwrap_or(v.j_max);
    for (key, value) in [("grid", cfg.grid), ("study-grid", cfg.study_grid)] {
        if let Some(m) = value {
            if m < MIN_INTERVALS {
                return Err(CliError::Usage(format!("--{key}: need at least {MIN_INTERVALS} intervals, got {m}")));
            }
        }
    }
    v.intervals = cfg.grid.unwrap_or(v.intervals);
    v.study_intervals = cfg.study_grid.unwrap_or(v.study_intervals);
    if let Some(t) = cfg.tolerance {
        v.tolerance_linear = t;
        v.tolerance_unnatural = t;
    }
    if let Some(c) = &cfg.checks {
        v.checks = c.clone();
    }
    Ok(v)
}

fn report_text(report: &VerificationReport, cfg: &RunConfig, hash: &str) -> String {
    let kv = report.to_kv();
    match cfg.format {
        Format::Csv => format!("# dkp-spectra {VERSION} command=verify config_sha256={hash}\n{kv}"),
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("version".into(), VERSION.into());
            obj.insert("config_sha256".into(), hash.into());
            for line in kv.lines() {
                if let Some((k, v)) = line.split_once(" = ") {
                    obj.insert(k.into(), Value::from(v));
                }
            }
            let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
            text.push('\n');
            text
        }
    }
}

pub fn run(cfg: &RunConfig, command: &str) -> Result<u8, CliError> {
    let v = verification_config(cfg)?;
    let report = run_verification(&v).map_err(|e| CliError::Unsupported(e.to_string()))?;
    let path = cfg
        .report
        .clone()
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_REPORT));
    write_text(Some(&path), &report_text(&report, cfg, &cfg.hash(command)))?;
    print!("{}", report.summary());
    println!("report written to {}", path.display());
    Ok(if report.pass() { 0 } else { EXIT_VERIFICATION_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_mapping_and_rejections() {
        let mut c = RunConfig::default();
        c.set("lambda", "0.05,0.2").unwrap();
        c.set("tolerance", "1e-12").unwrap();
        c.set("checks", "commutator").unwrap();
        let v = verification_config(&c).unwrap();
        assert_eq!(v.lambdas, vec![0.05, 0.2]);
        assert_eq!((v.tolerance_linear, v.tolerance_unnatural), (1e-12, 1e-12));
        assert_eq!(v.checks.len(), 1);
        c.set("grid", "100").unwrap();
        assert_eq!(verification_config(&c).unwrap_err().exit_code(), 2);
        let mut c = RunConfig::default();
        c.set("lambda", "-0.1").unwrap();
        assert_eq!(verification_config(&c).unwrap_err().exit_code(), 3);
    }
}
