use clap::ValueEnum;
use lvcert::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Result of one subcommand. `failure` marks a failed mathematical check:
/// the output is still written, but the run exits with status 4.
#[derive(Debug, Clone)]
pub struct Output {
    pub value: Value,
    pub table: Option<Table>,
    pub failure: Option<String>,
}

impl Output {
    pub fn json<T: Serialize>(v: &T) -> Self {
        Output { value: serde_json::to_value(v).expect("serializable output"), table: None, failure: None }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn fail_if(mut self, failed: bool, msg: impl FnOnce() -> String) -> Self {
        if failed {
            self.failure = Some(msg());
        }
        self
    }

    /// Canonical bytes: pretty JSON with sorted keys, or CSV.
    pub fn render(&self, format: Format, command: &str) -> Result<String> {
        match format {
            // serde_json's default map is ordered by key
            Format::Json => Ok(serde_json::to_string_pretty(&self.value).expect("json") + "\n"),
            Format::Csv => self
                .table
                .as_ref()
                .map(Table::render)
                .ok_or_else(|| Error::Domain(format!("{command} has no tabular output; use --format json"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self) -> String {
        let mut out = self.header.join(",") + "\n";
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}
