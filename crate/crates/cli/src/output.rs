//! Output records and their plain, CSV and JSON renderings.

use std::collections::BTreeMap;

use clap::ValueEnum;
use gwcalc::Rational;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValueEntry {
    pub label: String,
    /// Exact value as `num/den`.
    pub rational: Option<String>,
    /// Exact decimal string, for integers only.
    pub decimal: Option<String>,
    /// Non-numeric rendering (series, ring elements, placeholders).
    pub text: Option<String>,
}

impl ValueEntry {
    pub fn number(label: impl Into<String>, v: &Rational) -> Self {
        ValueEntry {
            label: label.into(),
            rational: Some(v.to_fraction_string()),
            decimal: v.to_decimal_string(),
            text: None,
        }
    }

    pub fn text(label: impl Into<String>, text: impl Into<String>) -> Self {
        ValueEntry {
            label: label.into(),
            rational: None,
            decimal: None,
            text: Some(text.into()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub values: Vec<ValueEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partitions: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// A command result: the JSON record plus a table for plain and CSV.
#[derive(Debug, Clone)]
pub struct Report {
    pub record: OutputRecord,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            record: OutputRecord {
                command: command.to_string(),
                inputs: BTreeMap::new(),
                values: Vec::new(),
                partitions: None,
                elapsed_ms: None,
            },
            header: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.record.inputs.insert(key.to_string(), value.into());
        self
    }

    /// A report holding one value, shown bare in plain output.
    pub fn single(command: &str, label: &str, entry: ValueEntry) -> Self {
        let mut r = Report::new(command);
        let shown = display(&entry);
        r.header = vec![label.to_string()];
        r.rows = vec![vec![shown]];
        r.record.values.push(entry);
        r
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self
                .rows
                .iter()
                .map(|row| row.join(" "))
                .collect::<Vec<_>>()
                .join("\n"),
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                let bytes = w.into_inner().expect("in-memory write");
                String::from_utf8(bytes).expect("utf-8 input").trim_end().to_string()
            }
            Format::Json => serde_json::to_string_pretty(&self.record).expect("serialisable record"),
        }
    }
}

pub fn display(entry: &ValueEntry) -> String {
    if let Some(t) = &entry.text {
        return t.clone();
    }
    let r: Rational = entry
        .rational
        .as_deref()
        .expect("numeric entry")
        .parse()
        .expect("canonical fraction");
    r.to_string()
}
