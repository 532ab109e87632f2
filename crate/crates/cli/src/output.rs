//! Tables and their CSV / JSON renderings.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
}

impl Cell {
    /// CSV text; floats carry 17 significant digits.
    pub fn csv(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            // −0 prints as 0 so sign-of-zero noise never reaches golden files
            Cell::Float(x) => format!("{:.16e}", x + 0.0),
            Cell::Bool(b) => u8::from(*b).to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Str(s) => Value::from(s.as_str()),
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<u32> for Cell {
    fn from(i: u32) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.into())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

/// Provenance written ahead of every table.
#[derive(Debug, Clone, PartialEq)]
pub struct Meta {
    pub command: String,
    pub config_hash: String,
    pub units: String,
    pub convention: String,
}

impl Meta {
    pub fn header_line(&self) -> String {
        format!(
            "# dkp-spectra {VERSION} command={} config_sha256={} units={} convention={}",
            self.command, self.config_hash, self.units, self.convention
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&'static str]) -> Self {
        Table { name: name.into(), columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Two-column key/value table.
    pub fn record(name: impl Into<String>, pairs: Vec<(String, Cell)>) -> Self {
        let mut t = Table::new(name, &["key", "value"]);
        for (k, v) in pairs {
            t.push(vec![Cell::Str(k), v]);
        }
        t
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn to_csv(&self, meta: &Meta) -> String {
        let mut out = meta.header_line();
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self, meta: &Meta) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "version": VERSION,
            "command": meta.command,
            "config_sha256": meta.config_hash,
            "units": meta.units,
            "convention": meta.convention,
            "table": self.name,
            "columns": self.columns,
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
        text.push('\n');
        text
    }

    pub fn render(&self, meta: &Meta, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(meta),
            Format::Json => self.to_json(meta),
        }
    }
}

/// Writes to `path`, or to standard output when absent.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}
