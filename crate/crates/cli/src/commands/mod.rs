pub mod bound;
pub mod figures;
pub mod nu;
pub mod spectrum;
pub mod verify;
pub mod wavefunction;

use dkp_spectra::params::ELECTRON_MASS_SI;
use dkp_spectra::{make_params, Params64, ParamsError, Space, UnitSystem};

use crate::output::{write_text, Meta, Table};
use crate::{CliError, RunConfig};

pub const DEFAULT_LAMBDA: f64 = 0.1;

fn params_error(e: ParamsError) -> CliError {
    let key = match &e {
        ParamsError::SignMismatch { .. } => {
            return CliError::Usage(format!(
                "--lambda: {e}; pass a value of the right sign or add --lambda-magnitude"
            ))
        }
        ParamsError::NonPositive { name, .. } | ParamsError::NonFinite { name, .. } => *name,
        ParamsError::FlatSpace => "lambda",
    };
    CliError::Usage(format!("--{key}: {e}"))
}

/// Validated parameters from the model flags.
pub fn model_params(cfg: &RunConfig, default_lambda: f64) -> Result<Params64, CliError> {
    let raw = cfg.single_lambda(default_lambda)?;
    let (lambda, space) = if cfg.lambda_magnitude {
        let space = cfg
            .space
            .ok_or_else(|| CliError::Usage("--lambda-magnitude: requires --space".into()))?;
        let lambda = match space {
            Space::AdS => raw.abs(),
            Space::DS => -raw.abs(),
            Space::Flat => raw,
        };
        (lambda, space)
    } else {
        (raw, cfg.space.unwrap_or_else(|| Space::from_sign(raw)))
    };
    let mass = cfg.mass.unwrap_or(match cfg.units {
        UnitSystem::Natural => 1.0,
        UnitSystem::Si => ELECTRON_MASS_SI,
    });
    make_params(mass, cfg.omega.unwrap_or(1.0), lambda, space, cfg.units).map_err(params_error)
}

pub fn meta(cfg: &RunConfig, command: &str, units: &str, convention: &str) -> Meta {
    Meta {
        command: command.into(),
        config_hash: cfg.hash(command),
        units: units.into(),
        convention: convention.into(),
    }
}

pub fn units_label(cfg: &RunConfig) -> &'static str {
    match cfg.units {
        UnitSystem::Natural => "natural(hbar=c=1)",
        UnitSystem::Si => "si",
    }
}

/// Renders one table to --out or standard output.
pub fn emit(cfg: &RunConfig, meta: &Meta, table: &Table) -> Result<(), CliError> {
    write_text(cfg.out.as_deref(), &table.render(meta, cfg.format))
}
