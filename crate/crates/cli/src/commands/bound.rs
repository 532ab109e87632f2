use dkp_spectra::spectra::{penning_bound, BoundResult, PenningConstants, SpectraError};

use super::{emit, meta};
use crate::output::{Cell, Table};
use crate::{CliError, RunConfig};

pub fn bound(cfg: &RunConfig) -> Result<BoundResult, CliError> {
    let constants = if cfg.exact_constants { PenningConstants::Exact } else { PenningConstants::Rounded };
    penning_bound(
        cfg.field_tesla.unwrap_or(6.0),
        cfg.level.unwrap_or(1e10),
        cfg.threshold.unwrap_or(1.0),
        constants,
    )
    .map_err(|e| match e {
        SpectraError::BoundInput { name, .. } => {
            let flag = match name {
                "field" => "field-tesla",
                other => other,
            };
            CliError::Usage(format!("--{flag}: {e}"))
        }
        other => CliError::Usage(other.to_string()),
    })
}

pub fn bound_table(r: &BoundResult) -> Table {
    let i = &r.inputs;
    Table::record(
        "bound",
        vec![
            ("lambda_max_m^-2".into(), Cell::from(r.lambda_max)),
            ("delta_p_min_bound_kg_m_per_s".into(), Cell::from(r.delta_p_min_max)),
            ("field_tesla".into(), Cell::from(i.b_tesla)),
            ("level".into(), Cell::from(i.n_level)),
            ("threshold_hbar_omega_c".into(), Cell::from(i.threshold_quanta)),
            ("e_hbar_b_kg^2_m^2_per_s^2".into(), Cell::from(i.e_hbar_b)),
            ("constants".into(), Cell::from(i.constants.label())),
            ("particle".into(), Cell::from("electron")),
        ],
    )
}

pub fn run(cfg: &RunConfig, command: &str) -> Result<u8, CliError> {
    let r = bound(cfg)?;
    emit(cfg, &meta(cfg, command, "si", "none"), &bound_table(&r))?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_zero_names_the_flag() {
        let mut c = RunConfig::default();
        c.set("level", "0").unwrap();
        let e = bound(&c).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("--level"));
        let mut c = RunConfig::default();
        c.set("field-tesla", "-1").unwrap();
        assert!(bound(&c).unwrap_err().to_string().contains("--field-tesla"));
    }

    #[test]
    fn default_is_six_tesla() {
        let r = bound(&RunConfig::default()).unwrap();
        assert_eq!(r.inputs.b_tesla, 6.0);
        assert_eq!(r.inputs.e_hbar_b, 1e-52);
        let t = bound_table(&r);
        assert_eq!(t.rows[1][0].csv(), "delta_p_min_bound_kg_m_per_s");
    }
}
