//! Scenario documents.

use std::fmt;

use serde::Deserialize;

use qcyl_core::literal::{EntryLiteral, SequenceLiteral, TermLiteral};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Axioms,
    Classify,
    RpInvariant,
    RpCovariant,
    OracleCompare,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Axioms => "axioms",
            Mode::Classify => "classify",
            Mode::RpInvariant => "rp-invariant",
            Mode::RpCovariant => "rp-covariant",
            Mode::OracleCompare => "oracle-compare",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindLiteral {
    Invariant,
    Covariant,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub mode: Option<Mode>,
    pub beta: Option<SequenceLiteral>,
    pub alpha: Option<SequenceLiteral>,
    pub kind: Option<KindLiteral>,
    pub mu: Option<i64>,
    pub m2: Option<f64>,
    #[serde(default)]
    pub f: Vec<EntryLiteral>,
    pub derivation: Option<Vec<TermLiteral>>,
    pub tol: Option<f64>,
    pub max_window: Option<i64>,
    pub initial_margin: Option<i64>,
    /// Inclusive window for the dense comparison.
    pub window: Option<(i64, i64)>,
    pub seed: Option<u64>,
    pub cases: Option<usize>,
    pub description: Option<String>,
}

/// Command-line values that take precedence over the document.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub max_window: Option<i64>,
    pub seed: Option<u64>,
}

pub fn parse(text: &str) -> Result<Scenario, String> {
    serde_json::from_str(text).map_err(|e| format!("scenario: {e}"))
}
