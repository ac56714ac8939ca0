//! Output destinations, CSV/JSON tables and metadata sidecars.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Format, OutputArgs};
use crate::error::CliError;

/// Where a single output document goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dest {
    Stdout,
    File(PathBuf),
}

impl Dest {
    /// `--output`, else `<FRACSUB_OUTPUT_DIR>/<default_name>.<ext>`, else stdout.
    pub fn resolve(out: &OutputArgs, default_name: &str) -> Dest {
        if let Some(p) = &out.output {
            return Dest::File(p.clone());
        }
        match &out.output_dir {
            Some(dir) => Dest::File(dir.join(format!("{default_name}.{}", extension(out.format)))),
            None => Dest::Stdout,
        }
    }

    fn open(&self) -> Result<Box<dyn Write>, CliError> {
        Ok(match self {
            Dest::Stdout => Box::new(BufWriter::new(io::stdout().lock())),
            Dest::File(p) => {
                if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
                }
                Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?))
            }
        })
    }
}

/// Directory for multi-file runs: `--output` or `FRACSUB_OUTPUT_DIR`.
pub fn resolve_dir(out: &OutputArgs) -> Result<PathBuf, CliError> {
    let dir = out
        .output
        .clone()
        .or_else(|| out.output_dir.clone())
        .ok_or_else(|| CliError::Usage("this run writes several files; pass --output <DIR>".into()))?;
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    Ok(dir)
}

pub fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

/// Declared trapezoid mass of a density table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MassCheck {
    pub mass: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl MassCheck {
    pub fn new(mass: f64, tolerance: f64) -> Self {
        MassCheck {
            mass,
            tolerance,
            pass: (mass - 1.0).abs() <= tolerance,
        }
    }
}

/// A numeric table. Columns flagged in `integer` print without exponent.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub integer: Vec<bool>,
    pub rows: Vec<Vec<f64>>,
    pub mass_check: Option<MassCheck>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            integer: vec![false; columns.len()],
            rows: Vec::new(),
            mass_check: None,
        }
    }

    pub fn from_pairs(columns: [&'static str; 2], pairs: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut t = Table::new(&columns);
        t.rows = pairs.into_iter().map(|(a, b)| vec![a, b]).collect();
        t
    }
}

/// 17 significant digits, so every value round-trips exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_table(dest: &Dest, format: Format, table: &Table) -> Result<(), CliError> {
    let mut w = dest.open()?;
    match format {
        Format::Csv => {
            {
                let mut csv = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(&mut w);
                csv.write_record(&table.columns)?;
                for row in &table.rows {
                    csv.write_record(row.iter().zip(&table.integer).map(|(&v, &int)| {
                        if int {
                            format!("{}", v as u64)
                        } else {
                            fmt_f64(v)
                        }
                    }))?;
                }
                csv.flush().map_err(|e| CliError::io(dest_path(dest), e))?;
            }
            if let Some(m) = table.mass_check {
                let verdict = if m.pass { "pass" } else { "fail" };
                writeln!(w, "# mass_check,{},{},{verdict}", fmt_f64(m.mass), fmt_f64(m.tolerance))
                    .map_err(|e| CliError::io(dest_path(dest), e))?;
            }
        }
        Format::Json => {
            let doc = json!({
                "columns": table.columns,
                "rows": table.rows,
                "mass_check": table.mass_check,
            });
            serde_json::to_writer(&mut w, &doc)?;
            writeln!(w).map_err(|e| CliError::io(dest_path(dest), e))?;
        }
    }
    w.flush().map_err(|e| CliError::io(dest_path(dest), e))
}

pub fn write_json(dest: &Dest, value: &impl Serialize) -> Result<(), CliError> {
    let mut w = dest.open()?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w).map_err(|e| CliError::io(dest_path(dest), e))?;
    w.flush().map_err(|e| CliError::io(dest_path(dest), e))
}

/// Resolved configuration of a run, with the tool version.
pub fn metadata(command: &str, config: &impl Serialize) -> Result<Value, CliError> {
    Ok(json!({
        "tool": "fracsub",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": serde_json::to_value(config)?,
    }))
}

/// Sidecar `<file>.meta.json` next to a file output; one JSON line on
/// stderr for stdout output.
pub fn write_metadata(dest: &Dest, meta: &Value) -> Result<(), CliError> {
    match dest {
        Dest::Stdout => {
            eprintln!("{}", serde_json::to_string(meta)?);
            Ok(())
        }
        Dest::File(p) => write_json(&Dest::File(sidecar(p)), meta),
    }
}

pub fn sidecar(p: &Path) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn dest_path(dest: &Dest) -> &Path {
    match dest {
        Dest::Stdout => Path::new("<stdout>"),
        Dest::File(p) => p,
    }
}
