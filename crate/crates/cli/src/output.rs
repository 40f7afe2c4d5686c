//! Deterministic table output: CSV or JSON, to stdout or a file.
//!
//! Times, angles, couplings, and spectral data print with 17 significant
//! digits (exact round-trip); fidelity deficits with 6 (for reading, not
//! reparsing). No timestamps anywhere; the generator version appears only
//! under `--verbose`, as a `#` comment line in CSV output.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

/// 17 significant digits: lossless decimal form of an f64.
pub fn full(x: f64) -> String {
    format!("{x:.16e}")
}

/// 6 significant digits: the readable form used for deficits.
pub fn short(x: f64) -> String {
    format!("{x:.5e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    json_rows: Vec<serde_json::Value>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            json_rows: Vec::new(),
        }
    }

    /// Push one row: CSV cells plus the JSON values they came from.
    pub fn push(&mut self, cells: Vec<String>, json: Vec<serde_json::Value>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        debug_assert_eq!(json.len(), self.columns.len());
        self.rows.push(cells);
        let object: serde_json::Map<String, serde_json::Value> = self
            .columns
            .iter()
            .map(|c| c.to_string())
            .zip(json)
            .collect();
        self.json_rows.push(serde_json::Value::Object(object));
    }

    fn to_csv(&self, verbose: bool) -> String {
        let mut text = String::new();
        if verbose {
            text.push_str(&format!(
                "# spinwire {}\n",
                env!("CARGO_PKG_VERSION")
            ));
        }
        text.push_str(&self.columns.join(","));
        text.push('\n');
        for row in &self.rows {
            text.push_str(&row.join(","));
            text.push('\n');
        }
        text
    }

    fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.json_rows).expect("rows serialize");
        text.push('\n');
        text
    }

    pub fn render(&self, format: Format, verbose: bool) -> String {
        match format {
            Format::Csv => self.to_csv(verbose),
            Format::Json => self.to_json(),
        }
    }
}

/// Render several tables into one document. CSV tables concatenate (each
/// with its own header line); JSON tables become an array per table keyed
/// by name when more than one is present.
pub struct Document {
    tables: Vec<(&'static str, Table)>,
}

impl Document {
    pub fn one(table: Table) -> Self {
        Self {
            tables: vec![("rows", table)],
        }
    }

    pub fn named(tables: Vec<(&'static str, Table)>) -> Self {
        Self { tables }
    }

    pub fn render(&self, format: Format, verbose: bool) -> String {
        match format {
            Format::Csv => {
                let mut text = String::new();
                for (i, (_, table)) in self.tables.iter().enumerate() {
                    text.push_str(&table.render(Format::Csv, verbose && i == 0));
                }
                text
            }
            Format::Json => {
                if self.tables.len() == 1 {
                    self.tables[0].1.render(Format::Json, verbose)
                } else {
                    let object: serde_json::Map<String, serde_json::Value> = self
                        .tables
                        .iter()
                        .map(|(name, table)| {
                            (
                                name.to_string(),
                                serde_json::Value::Array(table.json_rows.clone()),
                            )
                        })
                        .collect();
                    let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(object))
                        .expect("tables serialize");
                    text.push('\n');
                    text
                }
            }
        }
    }
}

/// Write rendered output to `--out` or stdout.
pub fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        None => print_stdout(text),
        Some(path) => write_file(text, path),
    }
}

/// Write to stdout, treating a closed pipe as a normal early exit.
pub fn print_stdout(text: &str) -> Result<(), CliError> {
    match std::io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::usage(format!("cannot write to stdout: {e}"))),
    }
}

fn write_file(text: &str, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}
