use dkp_spectra::spectra::SpectraError;
use dkp_spectra::wavefunctions::{chebyshev_r, components, WavefunctionError};
use dkp_spectra::{Params64, QuantumState, RadialComponents64, Sector};

use super::{emit, meta, model_params, units_label, DEFAULT_LAMBDA};
use crate::output::{Cell, Table};
use crate::{CliError, RunConfig};

pub const COLUMNS: [&str; 6] = ["r", "s", "component_name", "value", "normalized_flag", "convention"];
pub const DEFAULT_SAMPLES: usize = 512;

fn wave_error(e: WavefunctionError) -> CliError {
    match e {
        WavefunctionError::FlatSpaceUnsupported => CliError::Unsupported(
            "closed-form eigenfunctions need λ > 0; at λ = 0 the Jacobi weight degenerates (use the flat oscillator instead)"
                .into(),
        ),
        WavefunctionError::NotAdS(l) => {
            CliError::Unsupported(format!("eigenfunctions are only available in AdS (λ > 0), got λ = {l}"))
        }
        WavefunctionError::JZero => CliError::Usage("--j: unnatural-parity components need J >= 1".into()),
        WavefunctionError::Spectra(e @ SpectraError::NegativeESquared { .. }) => {
            CliError::Unsupported(format!("no bound state: {e}"))
        }
        other => CliError::Unsupported(other.to_string()),
    }
}

/// Samples every component of one state, normalized unless `raw`.
pub fn sample(cfg: &RunConfig, p: &Params64, state: &QuantumState) -> Result<RadialComponents64, CliError> {
    let r = chebyshev_r(p, cfg.samples.unwrap_or(DEFAULT_SAMPLES)).map_err(wave_error)?;
    let comps = components(p, state, &r).map_err(wave_error)?;
    if cfg.raw {
        Ok(comps)
    } else {
        comps.normalize(cfg.convention).map_err(wave_error)
    }
}

/// Long format: one row per (component, sample).
pub fn wavefunction_table(comps: &RadialComponents64) -> Table {
    let convention = comps.convention.map_or("none", |c| c.label());
    let normalized = comps.convention.is_some();
    let mut t = Table::new("wavefunction", &COLUMNS);
    for c in &comps.components {
        for ((&r, &s), &v) in comps.r.iter().zip(&comps.s).zip(&c.values) {
            t.push(vec![
                Cell::from(r),
                Cell::from(s),
                Cell::from(c.name),
                Cell::from(v),
                Cell::from(normalized),
                Cell::from(convention),
            ]);
        }
    }
    t
}

pub fn run(cfg: &RunConfig, command: &str) -> Result<u8, CliError> {
    let sector = match cfg.sectors.as_deref() {
        None => Sector::Spin0,
        Some([s]) => *s,
        Some(_) => {
            return Err(CliError::Usage(
                "--sector: wavefunction takes one of spin0, natural, unnatural+, unnatural-".into(),
            ))
        }
    };
    let p = model_params(cfg, DEFAULT_LAMBDA)?;
    let state = QuantumState::new(cfg.n.unwrap_or(0), cfg.j.unwrap_or(0), sector)
        .map_err(|e| CliError::Usage(format!("--j: {e}")))?;
    let comps = sample(cfg, &p, &state)?;
    let convention = if cfg.raw { "none" } else { cfg.convention.label() };
    emit(cfg, &meta(cfg, command, units_label(cfg), convention), &wavefunction_table(&comps))?;
    Ok(0)
}
