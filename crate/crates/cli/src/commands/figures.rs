//! Data series behind figures 1 to 7, in natural units ħ = c = m = 1.

use dkp_spectra::spectra::{
    energy_shell, energy_spin1_unnatural_shell, high_frequency_asymptote, level_spacing, momentum_uncertainty_bound,
    spacing_limit,
};
use dkp_spectra::{Branch, Params64, Sector, UnitSystem};

use super::meta;
use crate::output::{write_text, Cell, Table};
use crate::{CliError, RunConfig};

pub const IDS: [u32; 7] = [1, 2, 3, 4, 5, 6, 7];

/// Default λ per figure (|λ| for figure 1).
pub fn default_lambda(id: u32) -> f64 {
    match id {
        2 => 0.01,
        _ => 0.1,
    }
}

/// (N, J) of the unnatural-parity figures.
pub fn unnatural_level(id: u32) -> (u32, u32) {
    match id {
        4 | 6 => (1, 0),
        _ => (2, 1),
    }
}

fn log_grid(lo_exp: f64, hi_exp: f64, per_decade: u32) -> Vec<f64> {
    let steps = ((hi_exp - lo_exp) * per_decade as f64).round() as u32;
    (0..=steps).map(|k| 10f64.powf(lo_exp + k as f64 / per_decade as f64)).collect()
}

/// Frequencies of figures 4 to 7: 10⁻² to 10⁴, 20 per decade.
pub fn omega_grid() -> Vec<f64> {
    log_grid(-2.0, 4.0, 20)
}

/// Shells of figure 2: every N below 10, then 10 per decade up to 10⁶.
pub fn spacing_shells() -> Vec<u32> {
    let mut out: Vec<u32> = (0..10).collect();
    out.extend(log_grid(1.0, 6.0, 10).into_iter().map(|x| x.round() as u32));
    out.dedup();
    out
}

fn natural(omega: f64, lambda: f64) -> Params64 {
    Params64::natural(omega, lambda).expect("figure parameters are valid")
}

fn or_nan<E>(r: Result<f64, E>) -> f64 {
    r.unwrap_or(f64::NAN)
}

fn fig1(lambda: f64) -> Table {
    let l = lambda.abs();
    let mut t = Table::new("fig1", &["dx", "dp_bound_ads", "dp_bound_ds", "dp_bound_flat"]);
    for dx in log_grid(-1.0, 1.0, 40) {
        t.push(vec![
            Cell::from(dx),
            Cell::from(momentum_uncertainty_bound(1.0, l, dx)),
            Cell::from(momentum_uncertainty_bound(1.0, -l, dx)),
            Cell::from(momentum_uncertainty_bound(1.0, 0.0, dx)),
        ]);
    }
    t
}

fn fig2(lambda: f64) -> Table {
    let flat = natural(1.0, 0.0);
    let deformed = natural(1.0, lambda);
    let limit = or_nan(spacing_limit(&deformed));
    let mut t = Table::new("fig2", &["N", "spacing_flat", "spacing_deformed", "limit"]);
    for n in spacing_shells() {
        t.push(vec![
            Cell::from(n),
            Cell::from(or_nan(level_spacing(&flat, 0, n))),
            Cell::from(or_nan(level_spacing(&deformed, 0, n))),
            Cell::from(limit),
        ]);
    }
    t
}

fn fig3(lambda: f64) -> Table {
    let p = natural(1.0, lambda);
    let mut t = Table::new("fig3", &["N", "E_spin0", "E_spin1_natural"]);
    for n in 0..=20 {
        let e = |s| or_nan(energy_shell(&p, s, n, 0).map(|e| e.energy));
        t.push(vec![Cell::from(n), Cell::from(e(Sector::Spin0)), Cell::from(e(Sector::Spin1Natural))]);
    }
    t
}

fn unnatural_energy(omega: f64, lambda: f64, n: u32, j: u32, branch: Branch) -> f64 {
    or_nan(energy_spin1_unnatural_shell(&natural(omega, lambda), n, j, branch).map(|e| e.energy))
}

fn fig_energies(id: u32, lambda: f64) -> Table {
    let (n, j) = unnatural_level(id);
    // J = 0 has no finite large-ω limit
    let asymptote = high_frequency_asymptote::<f64>(n, j).unwrap_or(f64::INFINITY);
    let mut t = Table::new(format!("fig{id}"), &["omega", "E_plus", "E_minus", "asymptote"]);
    for w in omega_grid() {
        t.push(vec![
            Cell::from(w),
            Cell::from(unnatural_energy(w, lambda, n, j, Branch::Plus)),
            Cell::from(unnatural_energy(w, lambda, n, j, Branch::Minus)),
            Cell::from(asymptote),
        ]);
    }
    t
}

fn fig_contributions(id: u32, lambda: f64) -> Table {
    let (n, j) = unnatural_level(id);
    let mut t = Table::new(format!("fig{id}"), &["omega", "dE_plus", "dE_minus"]);
    for w in omega_grid() {
        let d = |b| unnatural_energy(w, lambda, n, j, b) - unnatural_energy(w, 0.0, n, j, b);
        t.push(vec![Cell::from(w), Cell::from(d(Branch::Plus)), Cell::from(d(Branch::Minus))]);
    }
    t
}

/// Data of one figure; `lambda` overrides the default.
pub fn figure(id: u32, lambda: Option<f64>) -> Result<Table, CliError> {
    let l = lambda.unwrap_or_else(|| default_lambda(id));
    match id {
        1 => Ok(fig1(l)),
        2 => Ok(fig2(l)),
        3 => Ok(fig3(l)),
        4 | 5 => Ok(fig_energies(id, l)),
        6 | 7 => Ok(fig_contributions(id, l)),
        other => Err(CliError::Usage(format!("--figures: unknown figure id {other} (1 to 7)"))),
    }
}

pub fn run(cfg: &RunConfig, command: &str) -> Result<u8, CliError> {
    if cfg.units == UnitSystem::Si {
        return Err(CliError::Usage("--units: figure data is defined in natural units".into()));
    }
    let lambda = cfg.lambdas.as_ref().map(|_| cfg.single_lambda(0.0)).transpose()?;
    let ids = cfg.figures.clone().unwrap_or_else(|| IDS.to_vec());
    let m = meta(cfg, command, "natural(hbar=c=m=1)", "none");
    if let Some(dir) = &cfg.out {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
    }
    for id in ids {
        let table = figure(id, lambda)?;
        let text = table.render(&m, cfg.format);
        match &cfg.out {
            Some(dir) => {
                let path = dir.join(format!("{}.{}", table.name, cfg.format.extension()));
                write_text(Some(&path), &text)?;
            }
            None => write_text(None, &text)?,
        }
    }
    Ok(0)
}
