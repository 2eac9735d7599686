//! CSV rows and the JSON manifest.

use crate::config::ExperimentConfig;
use crate::experiments::{Cell, ResultTable};
use anyhow::{Context, Result};
use serde_json::{json, Map, Value};
use std::fs;
use std::path::{Path, PathBuf};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits, enough to round-trip any f64.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Int(i) => i.to_string(),
        Cell::Float(f) => format_float(*f),
        Cell::Text(s) => s.clone(),
    }
}

pub fn csv_bytes(table: &ResultTable) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(cell_text))?;
    }
    Ok(w.into_inner().context("flushing CSV")?)
}

fn toml_to_json(v: &toml::Value) -> Value {
    match v {
        toml::Value::String(s) => json!(s),
        toml::Value::Integer(i) => json!(i),
        toml::Value::Float(f) => json!(f),
        toml::Value::Boolean(b) => json!(b),
        toml::Value::Datetime(d) => json!(d.to_string()),
        toml::Value::Array(a) => Value::Array(a.iter().map(toml_to_json).collect()),
        toml::Value::Table(t) => Value::Object(t.iter().map(|(k, v)| (k.clone(), toml_to_json(v))).collect()),
    }
}

/// Everything a run produced, ready for serialisation.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub config: ExperimentConfig,
    pub version: &'static str,
    pub runtime_s: f64,
    pub table: ResultTable,
}

impl RunRecord {
    pub fn manifest(&self) -> Value {
        let params: Map<String, Value> = self.config.params.iter().map(|(k, v)| (k.clone(), toml_to_json(v))).collect();
        json!({
            "experiment": self.config.experiment.name(),
            "params": params,
            "seed": self.config.seed,
            "version": self.version,
            "runtime_s": self.runtime_s,
            "summary": self.table.summary,
        })
    }

    /// Writes `<dir>/<experiment>.csv` and `<dir>/<experiment>.json`; returns both paths.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let stem = self.config.experiment.name();
        let csv_path = dir.join(format!("{stem}.csv"));
        let json_path = dir.join(format!("{stem}.json"));
        fs::write(&csv_path, csv_bytes(&self.table)?).with_context(|| format!("writing {}", csv_path.display()))?;
        let mut manifest = serde_json::to_string_pretty(&self.manifest())?;
        manifest.push('\n');
        fs::write(&json_path, manifest).with_context(|| format!("writing {}", json_path.display()))?;
        Ok((csv_path, json_path))
    }
}
