//! Report containers and serialization.
//!
//! Every verifier emits [`Verdict`]s (one checked claim each) and every
//! tabular trace shares the same four-column CSV schema `(level, statistic,
//! value, stderr)`. A [`RunReport`] bundles the verdicts of one experiment
//! run together with the provenance needed to reproduce it byte-for-byte:
//! the seed, the SHA-256 of the configuration, and the library version.
//! JSON bytes are a pure function of the report contents, so identical
//! configurations produce identical files.

use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// One checked claim with its numeric outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    /// Human-readable statement of what was checked.
    pub claim: String,
    /// The measured value.
    pub estimate: f64,
    /// The value the claim predicts.
    pub target: f64,
    /// Maximum |estimate − target| accepted as a pass.
    pub tolerance: f64,
    /// Whether the estimate met the target within tolerance.
    pub pass: bool,
}

impl Verdict {
    /// Build a verdict; passes when `|estimate − target| ≤ tolerance` and
    /// the estimate is finite.
    pub fn check(claim: impl Into<String>, estimate: f64, target: f64, tolerance: f64) -> Verdict {
        Verdict {
            claim: claim.into(),
            estimate,
            target,
            tolerance,
            pass: estimate.is_finite() && (estimate - target).abs() <= tolerance,
        }
    }
}

/// One row of the shared table schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    /// Threshold, level, or block size the statistic was computed at.
    pub level: f64,
    /// Name of the statistic.
    pub statistic: String,
    /// The value itself.
    pub value: f64,
    /// Standard error when available, 0.0 otherwise.
    pub stderr: f64,
}

impl TableRow {
    pub fn new(level: f64, statistic: impl Into<String>, value: f64, stderr: f64) -> TableRow {
        TableRow { level, statistic: statistic.into(), value, stderr }
    }
}

/// Complete record of one experiment run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    /// Experiment name from the configuration.
    pub name: String,
    /// Which analysis ran.
    pub analysis: String,
    /// Library version that produced the report.
    pub version: String,
    /// SHA-256 (hex) of the configuration bytes that produced the run.
    pub config_sha256: String,
    /// Master seed of the run.
    pub seed: u64,
    /// Checked claims.
    pub verdicts: Vec<Verdict>,
    /// Free-form named scalars (estimates, counts, z-scores).
    pub diagnostics: Vec<(String, f64)>,
    /// Warnings and skip notices that have no numeric value.
    pub notes: Vec<String>,
    /// Tabular trace, also written separately as CSV.
    pub table: Vec<TableRow>,
}

impl RunReport {
    /// True when every verdict passed.
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// Deterministic pretty-printed JSON bytes (trailing newline included).
    pub fn to_json_bytes(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("report serialization is total");
        bytes.push(b'\n');
        bytes
    }
}

/// Hex SHA-256 of arbitrary bytes (used to fingerprint configurations).
pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Write rows as RFC-4180 CSV with the fixed header
/// `level,statistic,value,stderr`.
pub fn write_table_csv<W: Write>(writer: W, rows: &[TableRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["level", "statistic", "value", "stderr"])
        .map_err(csv_io)?;
    for row in rows {
        w.write_record([
            format_float(row.level),
            row.statistic.clone(),
            format_float(row.value),
            format_float(row.stderr),
        ])
        .map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

/// Shortest decimal that round-trips to the same f64 (Rust's default `{}`),
/// with non-finite values spelled out.
fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn csv_io(e: csv::Error) -> crate::error::RvError {
    crate::error::RvError::Config(format!("csv write failed: {e}"))
}
