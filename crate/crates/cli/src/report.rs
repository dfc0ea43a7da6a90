use serde::Serialize;
use serde_json::Value;

use crate::args::{Format, GlobalArgs};
use crate::CliError;

/// Envelope around every command result. Only `wall_time` varies between
/// runs with the same configuration.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: Value,
    /// `ok`, or `verification_failed` when a checked property broke.
    pub status: &'static str,
    pub result: Value,
    /// Seconds.
    pub wall_time: f64,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.status != "ok"
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        let value = serde_json::to_value(self).map_err(CliError::internal)?;
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&value).map_err(CliError::internal)?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["key", "value"]).map_err(CliError::internal)?;
                for (k, v) in flatten(&value) {
                    w.write_record([k, v]).map_err(CliError::internal)?;
                }
                String::from_utf8(w.into_inner().map_err(CliError::internal)?)
                    .map_err(CliError::internal)
            }
            Format::Text => Ok(flatten(&value)
                .into_iter()
                .map(|(k, v)| format!("{k}: {v}\n"))
                .collect()),
        }
    }
}

/// Leaves of a JSON value as dotted paths, arrays indexed from 0.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let join = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(map) if !map.is_empty() => {
                for (k, v) in map {
                    walk(&join(k), v, out);
                }
            }
            Value::Array(items) if !items.is_empty() => {
                for (i, v) in items.iter().enumerate() {
                    walk(&join(&i.to_string()), v, out);
                }
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

pub fn config_echo(global: &GlobalArgs, command: &impl Serialize) -> Result<Value, CliError> {
    let mut cfg = serde_json::to_value(global).map_err(CliError::internal)?;
    let cmd = serde_json::to_value(command).map_err(CliError::internal)?;
    cfg["command"] = cmd;
    Ok(cfg)
}
