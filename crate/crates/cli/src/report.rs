use std::fmt;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug)]
pub enum CliError {
    /// Bad or unusable input.
    Input(String),
    /// A mathematical check could not be carried out to completion.
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Check(m) => f.write_str(m),
        }
    }
}

impl From<quartica_core::Error> for CliError {
    fn from(e: quartica_core::Error) -> Self {
        use quartica_core::Error as E;
        match e {
            E::BitangentCount { .. }
            | E::NoStabilization(_)
            | E::GeneratorWindow(_)
            | E::HilbertMismatch(_)
            | E::ClassificationConflict(_)
            | E::Certification(_)
            | E::RootFinding(_) => CliError::Check(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the command name and the canonical input.
    pub inputs_digest: String,
    pub passed: bool,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl RunReport {
    pub fn new(command: &str, canonical_input: &str, passed: bool, results: Value) -> Self {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        h.update([0u8]);
        h.update(canonical_input.as_bytes());
        RunReport {
            command: command.to_string(),
            inputs_digest: hex::encode(h.finalize()),
            passed,
            results,
            timing: None,
        }
    }

    pub fn set_timing(&mut self, d: Duration) {
        self.timing = Some(Timing {
            elapsed_ms: d.as_millis(),
        });
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
    /// Printed verbatim.
    Raw(String),
}

impl Format {
    pub fn from_flags(json: bool, csv: bool) -> Self {
        if json {
            Format::Json
        } else if csv {
            Format::Csv
        } else {
            Format::Text
        }
    }
}

pub struct Outcome {
    pub report: RunReport,
    pub text: String,
    pub csv: Option<String>,
    pub format: Format,
}

impl Outcome {
    pub fn new(report: RunReport, text: String) -> Self {
        Outcome {
            report,
            text,
            csv: None,
            format: Format::Text,
        }
    }

    pub fn render(&self) -> String {
        match &self.format {
            Format::Raw(s) => s.clone(),
            Format::Json => serde_json::to_string_pretty(&self.report).expect("serializable") + "\n",
            Format::Csv if self.csv.is_some() => self.csv.clone().unwrap_or_default(),
            _ => {
                let mut s = self.text.clone();
                if let Some(t) = &self.report.timing {
                    s.push_str(&format!("elapsed: {} ms\n", t.elapsed_ms));
                }
                s.push_str(if self.report.passed { "result: PASS\n" } else { "result: FAIL\n" });
                s
            }
        }
    }
}
