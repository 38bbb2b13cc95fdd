// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Records and tables serialized as CSV or JSON with 17 significant digits.

use std::io::{self, Write};
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Domain(format!(
                "unknown format `{other}` (expected csv|json)"
            ))),
        }
    }
}

/// `{:.16e}`: 17 significant digits, round-trips every finite f64.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Num(x) => format_f64(*x),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => u8::from(*b).to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Num(x) => s.serialize_f64(*x),
            Value::Int(i) => s.serialize_u64(*i),
            Value::Bool(b) => s.serialize_bool(*b),
            Value::Text(t) => s.serialize_str(t),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<u64> for Value {
    fn from(i: u64) -> Self {
        Value::Int(i)
    }
}

/// Ordered key/value pairs; one CSV row or one JSON object.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(String, Value)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.0.push((key.to_string(), value.into()));
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// What a subcommand emits.
#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Single(Record),
    Table(Vec<Record>),
}

struct SignificantDigits;

impl serde_json::ser::Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }
}

fn to_json<T: Serialize>(value: &T, out: &mut dyn Write) -> io::Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut *out, SignificantDigits);
    value.serialize(&mut ser).map_err(io::Error::other)?;
    out.write_all(b"\n")
}

fn csv_header(record: &Record) -> String {
    record
        .0
        .iter()
        .map(|(k, _)| k.as_str())
        .collect::<Vec<_>>()
        .join(",")
}

fn csv_row(record: &Record) -> String {
    record
        .0
        .iter()
        .map(|(_, v)| v.csv())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn write_artifact(
    artifact: &Artifact,
    format: OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    match (artifact, format) {
        (Artifact::Single(r), OutputFormat::Json) => to_json(r, out),
        (Artifact::Table(rows), OutputFormat::Json) => to_json(rows, out),
        (Artifact::Single(r), OutputFormat::Csv) => {
            writeln!(out, "{}\n{}", csv_header(r), csv_row(r))
        }
        (Artifact::Table(rows), OutputFormat::Csv) => {
            if let Some(first) = rows.first() {
                writeln!(out, "{}", csv_header(first))?;
            }
            for r in rows {
                writeln!(out, "{}", csv_row(r))?;
            }
            Ok(())
        }
    }
}
