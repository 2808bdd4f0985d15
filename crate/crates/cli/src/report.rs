//! Report documents and their JSON and CSV encodings.

use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;

pub const SCHEMA_VERSION: u32 = 1;

/// Float written with 17 significant digits; non-finite values become `null`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn text(self) -> String {
        if self.0.is_finite() {
            format!("{:.16e}", self.0)
        } else {
            String::new()
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(self.text()).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

impl From<f64> for Num {
    fn from(v: f64) -> Self {
        Num(v)
    }
}

pub fn opt(v: Option<f64>) -> Option<Num> {
    v.map(Num)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// A finished report: the JSON document plus its CSV table.
pub struct Report {
    pub json: String,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub exit: ExitStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Verified = 0,
    Violation = 2,
    Inconclusive = 3,
    InvalidInput = 4,
}

impl ExitStatus {
    pub fn verdict(self) -> &'static str {
        match self {
            ExitStatus::Verified => "verified",
            ExitStatus::Violation => "violation",
            ExitStatus::Inconclusive => "inconclusive",
            ExitStatus::InvalidInput => "invalid",
        }
    }
}

pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => format!("{}\n", report.json).into_bytes(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.csv_header).expect("in-memory write");
            for row in &report.csv_rows {
                w.write_record(row).expect("in-memory write");
            }
            w.into_inner().expect("in-memory flush")
        }
    }
}

/// Pretty JSON in declaration order.
pub fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}
