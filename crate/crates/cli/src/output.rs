use std::fs;
use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use crate::{Format, OutputArgs};

pub const SCHEMA: &str = "mf-atlas/1";

/// A command result: the JSON body plus a flat table for CSV output.
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    pub passed: bool,
    pub first_failure: Option<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &'static str, config: Value, result: impl Serialize) -> Result<Self, String> {
        Ok(Self {
            command,
            config,
            result: serde_json::to_value(result).map_err(|e| e.to_string())?,
            passed: true,
            first_failure: None,
            header: Vec::new(),
            rows: Vec::new(),
        })
    }

    pub fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.header = header;
        self.rows = rows;
        self
    }

    fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "config": self.config,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "result": self.result,
        })
    }

    fn to_csv(&self) -> Result<Vec<u8>, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["schema", SCHEMA]).map_err(|e| e.to_string())?;
        w.flush().map_err(|e| e.to_string())?;
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(w.into_inner().map_err(|e| e.to_string())?);
        w.write_record(&self.header).map_err(|e| e.to_string())?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| e.to_string())?;
        }
        w.into_inner().map_err(|e| e.to_string())
    }
}

/// Writes the report to `--out` (via a temporary file and rename) or stdout.
pub fn emit(report: &Report, out: &OutputArgs) -> Result<(), String> {
    let bytes = match out.format {
        Format::Json => {
            let mut b = serde_json::to_vec_pretty(&report.to_json()).map_err(|e| e.to_string())?;
            b.push(b'\n');
            b
        }
        Format::Csv => report.to_csv()?,
    };
    match &out.out {
        Some(path) => {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, &bytes).map_err(|e| format!("{}: {e}", tmp.display()))?;
            fs::rename(&tmp, path).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string()),
    }
}
