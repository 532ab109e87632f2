//! Command-line front end: spectra tables, wavefunction samples, oracle
//! verification, the Penning-trap bound, figure data and NU reductions.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 documented unsupported regime.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use config::{Format, RunConfig};
pub use output::{Cell, Meta, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unsupported regime: {0}")]
    Unsupported(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

pub const EXIT_VERIFICATION_FAILED: u8 = 1;

#[derive(Debug, Parser)]
#[command(name = "dkp-spectra", version, about = "Spectra of the DKP oscillator with an extended uncertainty principle")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Unit system: natural (ħ = c = 1) or si.
    #[arg(long, global = true)]
    pub units: Option<String>,
    /// `key = value` file; explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (a directory for `figures`); standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// csv or json.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Relative tolerance for oracle energy comparisons.
    #[arg(long, global = true)]
    pub tolerance: Option<String>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// spin0, natural, unnatural, unnatural+, unnatural- or all (comma-separated).
    #[arg(long)]
    pub sector: Option<String>,
    /// ads, ds or flat; inferred from the sign of λ when absent.
    #[arg(long)]
    pub space: Option<String>,
    /// Deformation λ (comma-separated list for `verify`).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Treat --lambda as |λ| and take the sign from --space.
    #[arg(long)]
    pub lambda_magnitude: bool,
    #[arg(long)]
    pub omega: Option<String>,
    #[arg(long)]
    pub mass: Option<String>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub n_max: Option<String>,
    #[arg(long)]
    pub j_max: Option<String>,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Radial quantum number.
    #[arg(long)]
    pub n: Option<String>,
    /// Total angular momentum.
    #[arg(long)]
    pub j: Option<String>,
    /// Number of Chebyshev points in s (default 512).
    #[arg(long)]
    pub samples: Option<String>,
    /// l2 or dkp.
    #[arg(long)]
    pub convention: Option<String>,
    /// Emit the unnormalized (C = 1) components.
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub n_max: Option<String>,
    #[arg(long)]
    pub j_max: Option<String>,
    /// Coarse grid intervals M for the M, 2M Richardson pair (default 2000).
    #[arg(long)]
    pub grid: Option<String>,
    /// Base intervals of the three-grid refinement study (default 200).
    #[arg(long)]
    pub study_grid: Option<String>,
    /// Comma-separated subset of energies, overlaps, richardson, residuals, commutator, uncertainty.
    #[arg(long)]
    pub checks: Option<String>,
    /// Report file (default verify-report.kv, or --out).
    #[arg(long)]
    pub report: Option<String>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Magnetic field in tesla (default 6).
    #[arg(long)]
    pub field_tesla: Option<String>,
    /// Landau level N (default 1e10).
    #[arg(long)]
    pub level: Option<String>,
    /// Detection threshold in units of ħω_c (default 1).
    #[arg(long)]
    pub threshold: Option<String>,
    /// Use e·ħ·B with SI constants instead of eħB = 1e-52 at 6 T.
    #[arg(long)]
    pub exact_constants: bool,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// Figure ids 1 to 7, or `all` (default).
    pub ids: Vec<String>,
    /// Override the figure's λ (|λ| for figure 1).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
}

#[derive(Debug, Args)]
pub struct NuArgs {
    /// μ = mω/(λħ) as an exact rational (default 10).
    #[arg(long)]
    pub mu: Option<String>,
    #[arg(long)]
    pub j: Option<String>,
    #[arg(long)]
    pub n_max: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form energy table.
    Spectrum(SpectrumArgs),
    /// Sampled radial components of one state.
    Wavefunction(WavefunctionArgs),
    /// Finite-difference oracle sweep against the closed forms.
    Verify(VerifyArgs),
    /// Penning-trap upper bound on λ and the minimal momentum uncertainty.
    Bound(BoundArgs),
    /// Data series for figures 1 to 7.
    Figures(FiguresArgs),
    /// Nikiforov-Uvarov reduction of the radial oscillator problem.
    Nu(NuArgs),
}

type Pairs = Vec<(&'static str, String)>;

fn push(pairs: &mut Pairs, key: &'static str, value: &Option<String>) {
    if let Some(v) = value {
        pairs.push((key, v.clone()));
    }
}

fn flag(pairs: &mut Pairs, key: &'static str, on: bool) {
    if on {
        pairs.push((key, "true".into()));
    }
}

impl GlobalArgs {
    fn pairs(&self) -> Pairs {
        let mut p = Vec::new();
        push(&mut p, "units", &self.units);
        push(&mut p, "out", &self.out);
        push(&mut p, "format", &self.format);
        push(&mut p, "tolerance", &self.tolerance);
        p
    }
}

impl ModelArgs {
    fn pairs(&self, p: &mut Pairs) {
        push(p, "sector", &self.sector);
        push(p, "space", &self.space);
        push(p, "lambda", &self.lambda);
        flag(p, "lambda-magnitude", self.lambda_magnitude);
        push(p, "omega", &self.omega);
        push(p, "mass", &self.mass);
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Wavefunction(_) => "wavefunction",
            Command::Verify(_) => "verify",
            Command::Bound(_) => "bound",
            Command::Figures(_) => "figures",
            Command::Nu(_) => "nu",
        }
    }

    fn pairs(&self) -> Pairs {
        let mut p = Vec::new();
        match self {
            Command::Spectrum(a) => {
                a.model.pairs(&mut p);
                push(&mut p, "n-max", &a.n_max);
                push(&mut p, "j-max", &a.j_max);
            }
            Command::Wavefunction(a) => {
                a.model.pairs(&mut p);
                push(&mut p, "n", &a.n);
                push(&mut p, "j", &a.j);
                push(&mut p, "samples", &a.samples);
                push(&mut p, "convention", &a.convention);
                flag(&mut p, "raw", a.raw);
            }
            Command::Verify(a) => {
                a.model.pairs(&mut p);
                push(&mut p, "n-max", &a.n_max);
                push(&mut p, "j-max", &a.j_max);
                push(&mut p, "grid", &a.grid);
                push(&mut p, "study-grid", &a.study_grid);
                push(&mut p, "checks", &a.checks);
                push(&mut p, "report", &a.report);
            }
            Command::Bound(a) => {
                push(&mut p, "field-tesla", &a.field_tesla);
                push(&mut p, "level", &a.level);
                push(&mut p, "threshold", &a.threshold);
                flag(&mut p, "exact-constants", a.exact_constants);
            }
            Command::Figures(a) => {
                if !a.ids.is_empty() {
                    p.push(("figures", a.ids.join(",")));
                }
                push(&mut p, "lambda", &a.lambda);
            }
            Command::Nu(a) => {
                push(&mut p, "mu", &a.mu);
                push(&mut p, "j", &a.j);
                push(&mut p, "n-max", &a.n_max);
            }
        }
        p
    }
}

impl Cli {
    /// Config file first, then explicit flags.
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.global.config {
            cfg.apply_file(path)?;
        }
        for (k, v) in self.global.pairs().into_iter().chain(self.command.pairs()) {
            cfg.set(k, &v)?;
        }
        Ok(cfg)
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let cfg = cli.config()?;
    let name = cli.command.name();
    match &cli.command {
        Command::Spectrum(_) => commands::spectrum::run(&cfg, name),
        Command::Wavefunction(_) => commands::wavefunction::run(&cfg, name),
        Command::Verify(_) => commands::verify::run(&cfg, name),
        Command::Bound(_) => commands::bound::run(&cfg, name),
        Command::Figures(_) => commands::figures::run(&cfg, name),
        Command::Nu(_) => commands::nu::run(&cfg, name),
    }
}
