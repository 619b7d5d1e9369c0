//! Tables, run manifests and their CSV/JSON renderings.

use std::collections::BTreeMap;
use std::io::Write;

use anyhow::{Context, Result};
use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub subcommand: String,
    pub parameters: BTreeMap<String, String>,
    pub output: String,
    pub format: Format,
    pub version: String,
    pub timestamp: String,
    pub notes: Vec<String>,
}

/// SOURCE_DATE_EPOCH when set, so that reruns are byte-identical; wall
/// clock otherwise.
fn timestamp() -> String {
    let pinned = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| DateTime::<Utc>::from_timestamp(secs, 0));
    pinned.unwrap_or_else(Utc::now).to_rfc3339_opts(SecondsFormat::Secs, true)
}

impl Manifest {
    pub fn new(subcommand: &str, format: Format, output: Option<&str>) -> Self {
        Self {
            subcommand: subcommand.into(),
            parameters: BTreeMap::new(),
            output: output.unwrap_or("-").into(),
            format,
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp: timestamp(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

#[derive(Debug, Clone)]
pub enum Column {
    Float(Vec<f64>),
    /// Exact integers already rendered in decimal.
    Integer(Vec<String>),
    Text(Vec<String>),
    Bool(Vec<bool>),
}

impl Column {
    fn len(&self) -> usize {
        match self {
            Column::Float(v) => v.len(),
            Column::Integer(v) | Column::Text(v) => v.len(),
            Column::Bool(v) => v.len(),
        }
    }

    fn cell(&self, i: usize) -> String {
        match self {
            Column::Float(v) => format_float(v[i]),
            Column::Integer(v) | Column::Text(v) => v[i].clone(),
            Column::Bool(v) => v[i].to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Column::Float(v) => Value::Array(v.iter().map(|&x| float_json(x)).collect()),
            Column::Integer(v) | Column::Text(v) => json!(v),
            Column::Bool(v) => json!(v),
        }
    }
}

/// 17 significant digits: enough to read back the same double.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn float_json(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or_else(|| Value::String(format_float(x)), Value::Number)
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    names: Vec<String>,
    columns: Vec<Column>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn column(mut self, name: impl Into<String>, col: Column) -> Self {
        if let Some(first) = self.columns.first() {
            assert_eq!(first.len(), col.len(), "column lengths differ");
        }
        self.names.push(name.into());
        self.columns.push(col);
        self
    }

    pub fn floats(self, name: impl Into<String>, v: Vec<f64>) -> Self {
        self.column(name, Column::Float(v))
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Column::len)
    }

    pub fn write(&self, manifest: &Manifest, out: &mut dyn Write) -> Result<()> {
        match manifest.format {
            Format::Csv => self.write_csv(manifest, out),
            Format::Json => self.write_json(manifest, out),
        }
    }

    fn write_csv(&self, manifest: &Manifest, out: &mut dyn Write) -> Result<()> {
        writeln!(out, "# subcommand: {}", manifest.subcommand)?;
        for (k, v) in &manifest.parameters {
            writeln!(out, "# {k}: {v}")?;
        }
        writeln!(out, "# output: {}", manifest.output)?;
        writeln!(out, "# version: {}", manifest.version)?;
        writeln!(out, "# timestamp: {}", manifest.timestamp)?;
        for n in &manifest.notes {
            writeln!(out, "# note: {n}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.names)?;
        for i in 0..self.rows() {
            w.write_record(self.columns.iter().map(|c| c.cell(i)))?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_json(&self, manifest: &Manifest, out: &mut dyn Write) -> Result<()> {
        let mut data = Map::new();
        for (name, col) in self.names.iter().zip(&self.columns) {
            data.insert(name.clone(), col.json());
        }
        let doc = json!({
            "meta": manifest,
            "columns": self.names,
            "data": data,
        });
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)?;
        Ok(())
    }
}

/// Writes to the file named in the manifest, or stdout for "-".
pub fn emit(table: &Table, manifest: &Manifest) -> Result<()> {
    if manifest.output == "-" {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        table.write(manifest, &mut lock)
    } else {
        let mut f = std::io::BufWriter::new(
            std::fs::File::create(&manifest.output).with_context(|| format!("creating {}", manifest.output))?,
        );
        table.write(manifest, &mut f)?;
        f.flush()?;
        Ok(())
    }
}
