//! Rendering of command results as JSON envelopes, CSV tables or text lines.

use serde::Serialize;
use serde_json::{json, Value};

/// A flat table mirroring the JSON result, for CSV output.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Everything a command produces.
#[derive(Clone, Debug)]
pub struct Output {
    pub result: Value,
    pub table: Table,
    /// Plain text lines, for commands that have a native text form.
    pub text: Option<Vec<String>>,
    /// Set when a verification inside the command failed.
    pub failed: bool,
    pub q_mode: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// `{command, config, version, q_mode, result}` with sorted keys.
pub fn envelope(command: &str, config: &Value, out: &Output) -> Value {
    json!({
        "command": command,
        "config": config,
        "version": xxz_paths::VERSION,
        "q_mode": out.q_mode,
        "result": out.result,
    })
}

pub fn csv_string(table: &Table, prefix_headers: &[String], prefixes: &[Vec<String>], with_header: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if with_header {
        let headers: Vec<&str> = prefix_headers.iter().chain(table.headers.iter()).map(String::as_str).collect();
        w.write_record(headers).expect("writing to memory");
    }
    for (i, row) in table.rows.iter().enumerate() {
        let prefix = prefixes.get(i).or_else(|| prefixes.first());
        let fields: Vec<&str> = prefix.into_iter().flatten().chain(row.iter()).map(String::as_str).collect();
        w.write_record(fields).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing memory writer")).expect("csv output is utf-8")
}

/// JSON numbers for floats use the shortest representation that round-trips.
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}
