//! CSV and JSON writers.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult, ErrorRecord};
use crate::scenario::SweepOutcome;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReferenceRow {
    pub inner_x: f64,
    pub inner_t: f64,
    pub x: f64,
    pub t: f64,
    pub u_reference: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AsymptoticRow {
    pub inner_x: f64,
    pub inner_t: f64,
    pub u_asymptotic: f64,
}

/// Serializes `rows` as CSV with a header line.
pub fn csv_bytes<T: Serialize>(rows: &[T]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::io("<csv>", e))?;
    }
    w.into_inner().map_err(|e| CliError::io("<csv>", e))
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, csv_bytes(rows)?).map_err(|e| CliError::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::io(path, e))?;
    fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
}

/// File name of the error field of leg `index`.
pub fn leg_file_name(scenario: &str, index: usize) -> String {
    format!("{scenario}_leg{index}.csv")
}

/// Writes one error-field CSV per leg and `report.json`; returns the paths written.
pub fn write_sweep(dir: &Path, outcome: &SweepOutcome) -> CliResult<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for (i, rows) in outcome.fields.iter().enumerate() {
        let p = dir.join(leg_file_name(&outcome.report.scenario, i));
        write_csv(&p, rows)?;
        paths.push(p);
    }
    let p = dir.join("report.json");
    write_json(&p, &outcome.report)?;
    paths.push(p);
    Ok(paths)
}

/// Best-effort `error.json` next to the other outputs.
pub fn write_error_record(dir: &Path, record: &ErrorRecord) {
    let _ = write_json(&dir.join("error.json"), record);
}
