//! Parameter sweeps: a TOML file names a subcommand and a grid of flag values.
//!
//! ```toml
//! command = "correlate"
//! [grid]
//! n = [2, 3]
//! m = [2, 3]
//! sites = ["3:down"]
//! eval = ["1/5", "1/2"]
//! ```
//!
//! Scalars count as one-element lists and `true` booleans become bare flags.
//! Points are enumerated with the keys in sorted order, the last key varying
//! fastest; results come back in that order whatever the job count.

use std::collections::BTreeMap;

use serde::Deserialize;
use toml::Value as Toml;

use crate::CliError;

#[derive(Debug, Deserialize)]
pub struct SweepFile {
    pub command: String,
    #[serde(default)]
    pub float: bool,
    #[serde(default)]
    pub grid: BTreeMap<String, Toml>,
}

/// One grid point as `(flag, value)` pairs; `None` marks a bare flag.
pub type Point = Vec<(String, Option<String>)>;

impl SweepFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: SweepFile = toml::from_str(text).map_err(|e| CliError::Usage(format!("sweep config: {e}")))?;
        if file.command == "sweep" {
            return Err(CliError::Usage("a sweep cannot run another sweep".into()));
        }
        Ok(file)
    }

    pub fn keys(&self) -> Vec<String> {
        self.grid.keys().cloned().collect()
    }

    /// The cartesian product of every grid list.
    pub fn points(&self) -> Result<Vec<Point>, CliError> {
        let mut points: Vec<Point> = vec![Vec::new()];
        for (key, value) in &self.grid {
            let items = match value {
                Toml::Array(a) => a.clone(),
                other => vec![other.clone()],
            };
            if items.is_empty() {
                return Err(CliError::Usage(format!("sweep config: grid key {key:?} has no values")));
            }
            let mut next = Vec::with_capacity(points.len() * items.len());
            for p in &points {
                for item in &items {
                    let mut q = p.clone();
                    q.push((key.clone(), scalar(key, item)?));
                    next.push(q);
                }
            }
            points = next;
        }
        Ok(points)
    }

    /// Command-line arguments for one point.
    pub fn argv(&self, point: &Point) -> Vec<String> {
        let mut args = vec!["xxzpaths".to_string()];
        if self.float {
            args.push("--float".into());
        }
        args.push(self.command.clone());
        for (key, value) in point {
            match value {
                // positional, for `verify <suite>`
                Some(v) if key == "suite" => args.push(v.clone()),
                Some(v) => {
                    args.push(format!("--{key}"));
                    args.push(v.clone());
                }
                None => args.push(format!("--{key}")),
            }
        }
        args
    }
}

/// `Some(text)` for a value, `None` for a set boolean flag; unset flags are
/// dropped by encoding them as an empty key later.
fn scalar(key: &str, v: &Toml) -> Result<Option<String>, CliError> {
    match v {
        Toml::String(s) => Ok(Some(s.clone())),
        Toml::Integer(i) => Ok(Some(i.to_string())),
        Toml::Float(f) => Ok(Some(f.to_string())),
        Toml::Boolean(true) => Ok(None),
        Toml::Boolean(false) => Ok(Some(String::new())),
        _ => Err(CliError::Usage(format!("sweep config: unsupported value for {key:?}"))),
    }
}

/// Drops `false` booleans, which are encoded as empty strings.
pub fn without_unset(point: &Point) -> Point {
    point
        .iter()
        .filter(|(_, v)| v.as_deref() != Some(""))
        .cloned()
        .collect()
}
