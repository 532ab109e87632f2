//! Run configuration: `key = value` files merged with command-line flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use dkp_spectra::oracle::report::Check;
use dkp_spectra::wavefunctions::NormConvention;
use dkp_spectra::{Sector, Space, UnitSystem};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Every setting a subcommand may read. Unset optional fields fall back to
/// per-command defaults.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub units: UnitSystem,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub tolerance: Option<f64>,
    pub sectors: Option<Vec<Sector>>,
    pub space: Option<Space>,
    pub lambdas: Option<Vec<f64>>,
    pub lambda_magnitude: bool,
    pub omega: Option<f64>,
    pub mass: Option<f64>,
    pub n_max: Option<u32>,
    pub j_max: Option<u32>,
    pub n: Option<u32>,
    pub j: Option<u32>,
    pub grid: Option<usize>,
    pub study_grid: Option<usize>,
    pub checks: Option<Vec<Check>>,
    pub samples: Option<usize>,
    pub convention: NormConvention,
    pub raw: bool,
    pub field_tesla: Option<f64>,
    pub level: Option<f64>,
    pub threshold: Option<f64>,
    pub exact_constants: bool,
    pub mu: Option<String>,
    pub figures: Option<Vec<u32>>,
    /// Canonical text of every physics-relevant setting, for hashing.
    canonical: BTreeMap<&'static str, String>,
}

/// Keys that never change the content of an output.
const UNHASHED: [&str; 3] = ["out", "report", "format"];

fn usage(key: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("--{key}: {msg}"))
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.trim().parse().map_err(|_| usage(key, format!("cannot parse `{value}`")))
}

fn boolean(key: &str, value: &str) -> Result<bool, CliError> {
    match value.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(usage(key, format!("expected true or false, got `{other}`"))),
    }
}

fn list<T>(key: &str, value: &str, item: impl Fn(&str) -> Result<Vec<T>, CliError>) -> Result<Vec<T>, CliError> {
    let mut out = Vec::new();
    for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        out.extend(item(part)?);
    }
    if out.is_empty() {
        return Err(usage(key, "empty list"));
    }
    Ok(out)
}

pub fn parse_sectors(key: &str, value: &str) -> Result<Vec<Sector>, CliError> {
    let mut sectors = list(key, value, |s| match s {
        "spin0" => Ok(vec![Sector::Spin0]),
        "natural" => Ok(vec![Sector::Spin1Natural]),
        "unnatural" => Ok(vec![Sector::Spin1UnnaturalPlus, Sector::Spin1UnnaturalMinus]),
        "unnatural+" | "plus" => Ok(vec![Sector::Spin1UnnaturalPlus]),
        "unnatural-" | "minus" => Ok(vec![Sector::Spin1UnnaturalMinus]),
        "all" => Ok(Sector::ALL.to_vec()),
        other => Err(usage(key, format!("unknown sector `{other}` (spin0, natural, unnatural, unnatural+, unnatural-, all)"))),
    })?;
    sectors.sort();
    sectors.dedup();
    Ok(sectors)
}

impl RunConfig {
    /// Applies one setting. `key` is the long flag name without dashes.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let canonical: String = match key {
            "units" => {
                self.units = match value.trim() {
                    "natural" => UnitSystem::Natural,
                    "si" => UnitSystem::Si,
                    other => return Err(usage(key, format!("expected natural or si, got `{other}`"))),
                };
                self.units.label().into()
            }
            "format" => {
                self.format = match value.trim() {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    other => return Err(usage(key, format!("expected csv or json, got `{other}`"))),
                };
                value.trim().into()
            }
            "out" => {
                self.out = Some(PathBuf::from(value.trim()));
                value.trim().into()
            }
            "report" => {
                self.report = Some(PathBuf::from(value.trim()));
                value.trim().into()
            }
            "tolerance" => {
                let t: f64 = number(key, value)?;
                if !(t.is_finite() && t > 0.0) {
                    return Err(usage(key, format!("must be positive, got {t}")));
                }
                self.tolerance = Some(t);
                format!("{t:e}")
            }
            "sector" => {
                let s = parse_sectors(key, value)?;
                let text = s.iter().map(|s| s.label()).collect::<Vec<_>>().join(",");
                self.sectors = Some(s);
                text
            }
            "space" => {
                self.space = Some(match value.trim() {
                    "ads" => Space::AdS,
                    "ds" => Space::DS,
                    "flat" => Space::Flat,
                    other => return Err(usage(key, format!("expected ads, ds or flat, got `{other}`"))),
                });
                value.trim().into()
            }
            "lambda" => {
                let l = list(key, value, |s| Ok(vec![number::<f64>(key, s)?]))?;
                if let Some(bad) = l.iter().find(|v| !v.is_finite()) {
                    return Err(usage(key, format!("must be finite, got {bad}")));
                }
                let text = l.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(",");
                self.lambdas = Some(l);
                text
            }
            "lambda-magnitude" => {
                self.lambda_magnitude = boolean(key, value)?;
                self.lambda_magnitude.to_string()
            }
            "omega" => {
                let v: f64 = number(key, value)?;
                self.omega = Some(v);
                format!("{v:e}")
            }
            "mass" => {
                let v: f64 = number(key, value)?;
                self.mass = Some(v);
                format!("{v:e}")
            }
            "n-max" => {
                let v: u32 = number(key, value)?;
                self.n_max = Some(v);
                v.to_string()
            }
            "j-max" => {
                let v: u32 = number(key, value)?;
                self.j_max = Some(v);
                v.to_string()
            }
            "n" => {
                let v: u32 = number(key, value)?;
                self.n = Some(v);
                v.to_string()
            }
            "j" => {
                let v: u32 = number(key, value)?;
                self.j = Some(v);
                v.to_string()
            }
            "grid" => {
                let v: usize = number(key, value)?;
                self.grid = Some(v);
                v.to_string()
            }
            "study-grid" => {
                let v: usize = number(key, value)?;
                self.study_grid = Some(v);
                v.to_string()
            }
            "checks" => {
                let c = list(key, value, |s| {
                    if s == "all" {
                        return Ok(Check::ALL.to_vec());
                    }
                    Check::parse(s).map(|c| vec![c]).ok_or_else(|| {
                        let known: Vec<_> = Check::ALL.iter().map(|c| c.label()).collect();
                        usage(key, format!("unknown check `{s}` ({})", known.join(", ")))
                    })
                })?;
                let text = c.iter().map(|c| c.label()).collect::<Vec<_>>().join(",");
                self.checks = Some(c);
                text
            }
            "samples" => {
                let s: usize = number(key, value)?;
                if s < 2 {
                    return Err(usage(key, "need at least 2 samples"));
                }
                self.samples = Some(s);
                s.to_string()
            }
            "convention" => {
                self.convention = match value.trim() {
                    "l2" => NormConvention::L2,
                    "dkp" => NormConvention::Dkp,
                    other => return Err(usage(key, format!("expected l2 or dkp, got `{other}`"))),
                };
                self.convention.label().into()
            }
            "raw" => {
                self.raw = boolean(key, value)?;
                self.raw.to_string()
            }
            "field-tesla" => {
                let v: f64 = number(key, value)?;
                self.field_tesla = Some(v);
                format!("{v:e}")
            }
            "level" => {
                let v: f64 = number(key, value)?;
                self.level = Some(v);
                format!("{v:e}")
            }
            "threshold" => {
                let v: f64 = number(key, value)?;
                self.threshold = Some(v);
                format!("{v:e}")
            }
            "exact-constants" => {
                self.exact_constants = boolean(key, value)?;
                self.exact_constants.to_string()
            }
            "mu" => {
                if dkp_spectra::scalar::parse_rational(value).is_none() {
                    return Err(usage(key, format!("expected a rational such as 10, 7/2 or 2.5, got `{value}`")));
                }
                self.mu = Some(value.trim().into());
                value.trim().into()
            }
            "figures" => {
                let ids = list(key, value, |s| {
                    if s == "all" {
                        return Ok((1..=7).collect());
                    }
                    let id: u32 = number(key, s)?;
                    if !(1..=7).contains(&id) {
                        return Err(usage(key, format!("unknown figure id {id} (1 to 7)")));
                    }
                    Ok(vec![id])
                })?;
                let text = ids.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                self.figures = Some(ids);
                text
            }
            other => return Err(CliError::Usage(format!("unknown configuration key `{other}`"))),
        };
        let key = KEYS.iter().find(|k| **k == key).expect("key matched above");
        self.canonical.insert(key, canonical);
        Ok(())
    }

    /// Reads a `key = value` file; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("{}:{}: expected `key = value`", path.display(), lineno + 1))
            })?;
            self.set(k.trim(), v.trim())
                .map_err(|e| CliError::Usage(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        }
        Ok(())
    }

    /// SHA-256 over the command name and every content-relevant setting.
    pub fn hash(&self, command: &str) -> String {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        h.update(b"\n");
        for (k, v) in self.canonical.iter().filter(|(k, _)| !UNHASHED.contains(k)) {
            h.update(format!("{k}={v}\n").as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The single λ of commands that take one value.
    pub fn single_lambda(&self, default: f64) -> Result<f64, CliError> {
        match self.lambdas.as_deref() {
            None => Ok(default),
            Some([l]) => Ok(*l),
            Some(_) => Err(usage("lambda", "this command takes a single value")),
        }
    }
}

/// Every accepted key.
pub const KEYS: [&str; 27] = [
    "units",
    "format",
    "out",
    "report",
    "tolerance",
    "sector",
    "space",
    "lambda",
    "lambda-magnitude",
    "omega",
    "mass",
    "n-max",
    "j-max",
    "n",
    "j",
    "grid",
    "study-grid",
    "checks",
    "samples",
    "convention",
    "raw",
    "field-tesla",
    "level",
    "threshold",
    "exact-constants",
    "mu",
    "figures",
];
