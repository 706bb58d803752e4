//! Machine-readable run reports and the fixed-precision CSV writer.
//!
//! Reports follow `schema/report.schema.json`. Non-finite numbers serialize as
//! `null` in JSON and as empty CSV cells.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A documented singular case, reported but not counted as a failure.
    ExpectedSkip,
}

/// Named check with the value it measured and the bound it was held to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    /// Passes when `measured <= threshold`; NaN fails.
    pub fn check(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        let status = if measured <= threshold { Status::Pass } else { Status::Fail };
        Self { name: name.into(), status, measured, threshold, detail: None }
    }

    /// A check that could not be evaluated.
    pub fn error(name: impl Into<String>, threshold: f64, err: impl std::fmt::Display) -> Self {
        Self { name: name.into(), status: Status::Fail, measured: f64::NAN, threshold, detail: Some(err.to_string()) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Header row, then one row per sample with every value in `{:.16e}`.
    pub fn write_csv<W: Write>(&self, out: W) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&v| format_cell(v)))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// 17 significant digits, enough to round-trip every `f64`.
pub fn format_cell(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub command: String,
    pub version: String,
    /// Seconds since the Unix epoch; `SOURCE_DATE_EPOCH` pins it for reproducible output.
    pub created_unix: u64,
    pub config: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub metadata: Metadata,
    pub tables: BTreeMap<String, Table>,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(command: &str, config: &impl Serialize) -> CliResult<Self> {
        Ok(Self {
            metadata: Metadata {
                command: command.to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                created_unix: timestamp(),
                config: serde_json::to_value(config)?,
            },
            tables: BTreeMap::new(),
            verdicts: Vec::new(),
        })
    }

    pub fn passed(&self) -> bool {
        !self.verdicts.iter().any(Verdict::failed)
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)?;
        Ok(())
    }

    /// The report without its tables, for when the tables went to CSV.
    pub fn summary(&self) -> Self {
        Self { tables: BTreeMap::new(), ..self.clone() }
    }
}

fn timestamp() -> u64 {
    if let Some(epoch) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.parse().ok()) {
        return epoch;
    }
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}
