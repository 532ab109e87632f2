use dkp_spectra::spectra::{energy_shell, SpectraError};
use dkp_spectra::{Params64, Sector};

use super::{emit, meta, model_params, units_label, DEFAULT_LAMBDA};
use crate::output::{Cell, Table};
use crate::{CliError, RunConfig};

pub const COLUMNS: [&str; 16] = [
    "sector",
    "space",
    "lambda",
    "omega",
    "n",
    "J",
    "N",
    "E_squared",
    "E",
    "branch",
    "flat_term",
    "confinement_term",
    "rotational_term",
    "spin_orbit_term",
    "delta_split",
    "status",
];

fn status(e: &SpectraError) -> &'static str {
    match e {
        SpectraError::NegativeESquared { .. } => "negative_e_squared",
        SpectraError::NegativeRadicand { .. } => "negative_radicand",
        _ => "error",
    }
}

/// Closed-form levels with n ≤ n_max, J ≤ j_max, sorted by (N, J, branch).
pub fn spectrum_table(p: &Params64, sectors: &[Sector], n_max: u32, j_max: u32) -> Table {
    let mut keyed = Vec::new();
    for &sector in sectors {
        for n in 0..=n_max {
            for j in 0..=j_max {
                let shell = 2 * n + j;
                let head = vec![
                    Cell::from(sector.label()),
                    Cell::from(p.space().label()),
                    Cell::from(p.lambda()),
                    Cell::from(p.omega()),
                    Cell::from(n),
                    Cell::from(j),
                    Cell::from(shell),
                ];
                let branch = Cell::from(sector.branch().map_or("none", |b| b.label()));
                let tail = match energy_shell(p, sector, shell, j) {
                    Ok(e) => {
                        let b = &e.breakdown;
                        vec![
                            Cell::from(e.e_squared),
                            Cell::from(e.energy),
                            branch,
                            Cell::from(b.flat_term),
                            Cell::from(b.confinement_term),
                            Cell::from(b.rotational_term),
                            Cell::from(b.spin_orbit_term),
                            Cell::from(b.delta_split),
                            Cell::from(if e.j_zero_flagged { "j0_flagged" } else { "ok" }),
                        ]
                    }
                    Err(err) => {
                        let mut t = vec![Cell::from(f64::NAN), Cell::from(f64::NAN), branch];
                        t.extend((0..5).map(|_| Cell::from(f64::NAN)));
                        t.push(Cell::from(status(&err)));
                        t
                    }
                };
                keyed.push(((shell, j, sector), [head, tail].concat()));
            }
        }
    }
    keyed.sort_by_key(|(k, _)| *k);
    let mut table = Table::new("spectrum", &COLUMNS);
    keyed.into_iter().for_each(|(_, row)| table.push(row));
    table
}

pub fn run(cfg: &RunConfig, command: &str) -> Result<u8, CliError> {
    let p = model_params(cfg, DEFAULT_LAMBDA)?;
    let sectors = cfg.sectors.clone().unwrap_or_else(|| Sector::ALL.to_vec());
    let table = spectrum_table(&p, &sectors, cfg.n_max.unwrap_or(3), cfg.j_max.unwrap_or(2));
    emit(cfg, &meta(cfg, command, units_label(cfg), "none"), &table)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin0_nine_rows_sorted() {
        let p = Params64::natural(1.0, 0.1).unwrap();
        let t = spectrum_table(&p, &[Sector::Spin0], 2, 2);
        assert_eq!(t.rows.len(), 9);
        let shell = t.column("N").unwrap();
        let ns: Vec<_> = t.rows.iter().map(|r| r[shell].clone()).collect();
        let mut sorted = ns.clone();
        sorted.sort_by_key(|c| match c {
            Cell::Int(i) => *i,
            _ => unreachable!(),
        });
        assert_eq!(ns, sorted);
        let row = t
            .rows
            .iter()
            .find(|r| r[4] == Cell::Int(1) && r[5] == Cell::Int(0))
            .unwrap();
        match row[7] {
            Cell::Float(e2) => assert!((e2 - 5.8).abs() < 1e-14),
            _ => unreachable!(),
        }
    }

    #[test]
    fn unnatural_branches_follow_each_other() {
        let p = Params64::natural(1.0, 0.1).unwrap();
        let t = spectrum_table(&p, &[Sector::Spin1UnnaturalMinus, Sector::Spin1UnnaturalPlus], 0, 1);
        let labels: Vec<_> = t.rows.iter().map(|r| r[9].csv()).collect();
        assert_eq!(labels, ["+", "-", "+", "-"]);
        assert_eq!(t.rows[0][15].csv(), "j0_flagged");
    }
}
