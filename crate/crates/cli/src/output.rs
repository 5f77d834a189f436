//! CSV, JSON and plot-data writers.

use std::fs;
use std::path::{Path, PathBuf};

use hklab_core::family::FiberRow;
use hklab_core::multiplicity::{to_f64, HKEstimate, Rational};
use serde_json::{json, Value};

use crate::{CliError, Format};

pub struct Writer {
    dir: PathBuf,
    format: Format,
}

impl Writer {
    pub fn new(dir: &Path, format: Format) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| {
            CliError::Validation(format!("output directory {} is not writable: {e}", dir.display()))
        })?;
        Ok(Writer { dir: dir.to_path_buf(), format })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn csv(&self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
        if self.format == Format::Json {
            return Ok(());
        }
        let path = self.dir.join(format!("{name}.csv"));
        let mut w = csv::Writer::from_path(&path).map_err(|e| io_error(&path, e))?;
        w.write_record(header).map_err(|e| io_error(&path, e))?;
        for r in rows {
            w.write_record(r).map_err(|e| io_error(&path, e))?;
        }
        w.flush().map_err(|e| io_error(&path, e))
    }

    pub fn json(&self, name: &str, value: &Value) -> Result<(), CliError> {
        if self.format == Format::Csv {
            return Ok(());
        }
        let path = self.dir.join(format!("{name}.json"));
        let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
        text.push('\n');
        fs::write(&path, text).map_err(|e| io_error(&path, e))
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Internal(format!("writing {}: {e}", path.display()))
}

pub fn int_json(n: i128) -> Value {
    i64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::String(n.to_string()))
}

pub fn rat_json(r: &Rational) -> Value {
    json!({ "num": int_json(*r.numer()), "den": int_json(*r.denom()), "decimal": to_f64(r) })
}

pub fn decimal(r: &Rational) -> String {
    to_f64(r).to_string()
}

pub fn estimate_json(e: &HKEstimate) -> Value {
    json!({
        "value": rat_json(&e.value),
        "D_hat": rat_json(&e.d_hat),
        "error_bound": rat_json(&e.error_bound),
        "e_max": e.samples.last().map(|s| s.e),
        "heuristic": true,
    })
}

fn file_stem(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || "=-_.".contains(c) { c } else { '_' })
        .collect()
}

/// One two-column `e normalized` file per fiber under `dir/plot`.
pub fn emit_plotdata(rows: &[FiberRow], dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    if rows.is_empty() || rows.iter().all(|r| r.hk.is_empty()) {
        return Err(CliError::Validation("no sweep rows to write as plot data".into()));
    }
    let plot = dir.join("plot");
    fs::create_dir_all(&plot).map_err(|e| io_error(&plot, e))?;
    let mut out = Vec::new();
    for r in rows {
        let path = plot.join(format!("{}.dat", file_stem(&r.label)));
        let mut text = String::new();
        for s in &r.hk {
            text.push_str(&format!("{} {}\n", s.e, s.decimal()));
        }
        fs::write(&path, text).map_err(|e| io_error(&path, e))?;
        out.push(path);
    }
    Ok(out)
}
