use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::Value;

use crate::config::Format;
use crate::error::CliError;

/// Rows for the CSV rendering of a command whose natural output is a list.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// One command result. `record` is the JSON form; the other renderings
/// fall back to a flattening of it.
#[derive(Debug, Clone)]
pub struct Report {
    pub record: Value,
    pub table: Option<Table>,
    pub text: Option<String>,
}

impl Report {
    pub fn new(record: Value) -> Self {
        Report {
            record,
            table: None,
            text: None,
        }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }
}

/// Spreadsheet-friendly form of a JSON value: scalars as-is, flat arrays
/// joined by `;`, anything deeper as compact JSON.
pub fn cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => value.to_string(),
        Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(";")
        }
        other => other.to_string(),
    }
}

fn flatten(record: &Value) -> Table {
    match record {
        Value::Object(map) => Table {
            header: map.keys().cloned().collect(),
            rows: vec![map.values().map(cell).collect()],
        },
        other => Table {
            header: vec!["value".into()],
            rows: vec![vec![cell(other)]],
        },
    }
}

pub fn open_sink(path: Option<&Path>, append: bool) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        None => Box::new(BufWriter::new(io::stdout().lock())),
        Some(p) => {
            let file: File = if append {
                OpenOptions::new().create(true).append(true).open(p)?
            } else {
                File::create(p)?
            };
            Box::new(BufWriter::new(file))
        }
    })
}

pub fn write_table(out: &mut dyn Write, table: &Table, with_header: bool) -> Result<(), CliError> {
    let mut writer = csv::WriterBuilder::new().from_writer(out);
    if with_header {
        writer.write_record(&table.header)?;
    }
    for row in &table.rows {
        writer.write_record(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn emit(out: &mut dyn Write, format: Format, report: &Report) -> Result<(), CliError> {
    match format {
        // An array record is a batch: one JSON line per element.
        Format::Json => {
            let lines = match &report.record {
                Value::Array(items) => items.iter().collect(),
                single => vec![single],
            };
            for line in lines {
                serde_json::to_writer(&mut *out, line)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let flat;
            let table = match &report.table {
                Some(t) => t,
                None => {
                    flat = flatten(&report.record);
                    &flat
                }
            };
            write_table(out, table, true)?;
        }
        Format::Text => match &report.text {
            Some(text) => write!(out, "{text}")?,
            None => {
                let flat = flatten(&report.record);
                for (key, value) in flat.header.iter().zip(&flat.rows[0]) {
                    writeln!(out, "{key}: {value}")?;
                }
            }
        },
    }
    out.flush()?;
    Ok(())
}
