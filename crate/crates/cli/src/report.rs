//! Report emission. Floats are always written with 17 significant digits
//! (`{:.16e}`), so a report read back reproduces every value bit for bit.

use std::fmt::Write;

use bks::Config;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

impl From<bks::witness::ReportStatus> for Status {
    fn from(s: bks::witness::ReportStatus) -> Self {
        use bks::witness::ReportStatus as R;
        match s {
            R::Pass => Status::Pass,
            R::Fail => Status::Fail,
            R::Vacuous => Status::Vacuous,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: Value,
    pub config: Value,
    pub results: Value,
    pub status: Status,
}

impl Report {
    pub fn new(command: Value, cfg: &Config, seed: u64, results: impl Serialize, status: Status) -> Self {
        let mut config = match serde_json::to_value(cfg).expect("config serializes") {
            Value::Object(m) => m,
            _ => unreachable!(),
        };
        config.insert("seed".into(), seed.into());
        Self {
            command,
            config: Value::Object(config),
            results: serde_json::to_value(results).expect("results serialize"),
            status,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Fail => 1,
            Status::Pass | Status::Vacuous => 0,
        }
    }

    fn value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone());
        m.insert("config".into(), self.config.clone());
        m.insert("results".into(), self.results.clone());
        m.insert("status".into(), serde_json::to_value(self.status).unwrap());
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        write_json(&self.value(), 0, &mut out);
        out.push('\n');
        out
    }

    /// One `path = value` line per leaf.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_text(&self.value(), &mut String::new(), &mut out);
        out
    }
}

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format_float(n.as_f64().unwrap()),
        other => other.to_string(),
    }
}

fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            write!(out, "[{}]", parts.join(", ")).unwrap();
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(item, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            write!(out, "{}]", pad(indent)).unwrap();
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                write!(out, "{}{}: ", pad(indent + 1), Value::String(key.clone())).unwrap();
                write_json(item, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            write!(out, "{}}}", pad(indent)).unwrap();
        }
        leaf => out.push_str(&scalar(leaf)),
    }
}

fn write_text(v: &Value, path: &mut String, out: &mut String) {
    let len = path.len();
    match v {
        Value::Array(items) => {
            for (k, item) in items.iter().enumerate() {
                write!(path, "[{k}]").unwrap();
                write_text(item, path, out);
                path.truncate(len);
            }
        }
        Value::Object(map) => {
            for (key, item) in map {
                if !path.is_empty() {
                    path.push('.');
                }
                path.push_str(key);
                write_text(item, path, out);
                path.truncate(len);
            }
        }
        Value::String(s) => writeln!(out, "{path} = {s}").unwrap(),
        leaf => writeln!(out, "{path} = {}", scalar(leaf)).unwrap(),
    }
}
