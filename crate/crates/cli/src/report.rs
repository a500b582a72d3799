use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use sl2_harmonic::suite::Check;
use sl2_harmonic::Result;

use crate::Format;

pub type Row = Map<String, Value>;

/// Flat check list plus optional plot-ready rows.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub data: Vec<Row>,
}

impl Report {
    pub fn new(command: impl Into<String>, checks: Vec<Check>) -> Self {
        Report { command: command.into(), checks, data: Vec::new() }
    }

    pub fn with_data(mut self, data: Vec<Row>) -> Self {
        self.data = data;
        self
    }

    /// JSON: the whole report. CSV: the data rows if there are any, otherwise the checks.
    pub fn write(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let mut sink: Box<dyn Write> = match out {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout().lock()),
        };
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut sink, self)?;
                writeln!(sink)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(sink);
                if self.data.is_empty() {
                    for c in &self.checks {
                        w.serialize(c).map_err(csv_err)?;
                    }
                } else {
                    let header: Vec<&String> = self.data[0].keys().collect();
                    w.write_record(&header).map_err(csv_err)?;
                    for row in &self.data {
                        w.write_record(header.iter().map(|k| cell(row.get(*k)))).map_err(csv_err)?;
                    }
                }
                w.flush()?;
                return Ok(());
            }
        }
        sink.flush()?;
        Ok(())
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

fn csv_err(e: csv::Error) -> sl2_harmonic::Error {
    io::Error::other(e).into()
}

/// Builds a row from (column, value) pairs.
pub fn row<const N: usize>(fields: [(&str, Value); N]) -> Row {
    fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
