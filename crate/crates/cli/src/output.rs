//! JSON-lines and CSV writers sharing one record shape.

use std::io::{self, BufWriter, Stdout, Write};

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub type Record = Vec<(String, Value)>;

pub fn rec<const N: usize>(fields: [(&str, Value); N]) -> Record {
    fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub struct Output {
    format: Format,
    out: BufWriter<Stdout>,
    columns: Option<usize>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_line(fields: &[String]) -> io::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    w.write_record(fields)?;
    w.into_inner().map_err(|e| io::Error::other(e.to_string()))
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output { format, out: BufWriter::new(io::stdout()), columns: None }
    }

    pub fn record(&mut self, rec: Record) -> io::Result<()> {
        match self.format {
            Format::Json => {
                let obj: Map<String, Value> = rec.into_iter().collect();
                serde_json::to_writer(&mut self.out, &Value::Object(obj))?;
                writeln!(self.out)
            }
            Format::Csv => {
                if self.columns.is_none() {
                    let header: Vec<String> = rec.iter().map(|(k, _)| k.clone()).collect();
                    self.columns = Some(header.len());
                    self.out.write_all(&csv_line(&header)?)?;
                }
                let row: Vec<String> = rec.iter().map(|(_, v)| cell(v)).collect();
                self.out.write_all(&csv_line(&row)?)
            }
        }
    }

    /// Stream metadata: a JSON line, or a `#` comment line in CSV.
    pub fn header(&mut self, rec: Record) -> io::Result<()> {
        match self.format {
            Format::Json => self.record(rec),
            Format::Csv => {
                let parts: Vec<String> = rec.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect();
                writeln!(self.out, "# {}", parts.join(" "))
            }
        }
    }

    /// The trailing sum line: `{"checksum": v}`, or a CSV row led by `checksum`.
    pub fn checksum(&mut self, value: String) -> io::Result<()> {
        match self.format {
            Format::Json => self.record(rec([("checksum", Value::String(value))])),
            Format::Csv => {
                let mut row = vec!["checksum".to_string(), value];
                row.resize(self.columns.unwrap_or(2).max(2), String::new());
                self.out.write_all(&csv_line(&row)?)
            }
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}
