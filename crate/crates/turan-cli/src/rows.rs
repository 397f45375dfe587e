//! Persisted result records and their CSV / line-record renderings.
//!
//! The line-record log is the source of truth (append-only JSON lines);
//! the CSV table is derived and regenerable. The timestamp is the last CSV
//! column so diffs "modulo timestamp" are a cheap cut.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

pub const STATUS_PASS: &str = "pass";
pub const STATUS_FAIL: &str = "fail";
pub const STATUS_REPORT: &str = "report-only";

/// One experiment unit's outcome. `key` is the cache identity (derived
/// from canonical forms of the inputs, never from display strings);
/// `(key)` is unique within a cache, and for per-`n` kinds the key embeds
/// `n`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ResultRow {
    pub key: String,
    pub experiment: String,
    pub kind: String,
    pub h: String,
    pub f: String,
    pub n: usize,
    pub outputs: BTreeMap<String, String>,
    pub status: String,
    pub timestamp: u64,
    pub version: String,
}

impl ResultRow {
    pub fn outputs_cell(&self) -> String {
        self.outputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

pub fn now_epoch() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn crate_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

const CSV_HEADER: [&str; 9] =
    ["experiment", "kind", "h", "f", "n", "status", "outputs", "version", "timestamp"];

pub fn write_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)
        .with_context(|| format!("cannot write CSV to {}", path.display()))?;
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.experiment.as_str(),
            r.kind.as_str(),
            r.h.as_str(),
            r.f.as_str(),
            &r.n.to_string(),
            r.status.as_str(),
            &r.outputs_cell(),
            r.version.as_str(),
            &r.timestamp.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_lines(rows: &[ResultRow], path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)
        .with_context(|| format!("cannot write records to {}", path.display()))?;
    for r in rows {
        serde_json::to_writer(&mut f, r)?;
        f.write_all(b"\n")?;
    }
    Ok(())
}
