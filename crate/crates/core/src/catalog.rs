//! Append-only JSON-lines catalog of decomposition instances.
//!
//! One record per line. A line is only ever written whole, terminated by
//! a newline; a trailing fragment without one is an interrupted append
//! and is ignored by readers and truncated by the next writer.

use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::{Seek, SeekFrom, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::DecompInstance;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogRecord {
    pub key: String,
    pub instance: DecompInstance,
    pub created_at: String,
    pub generator: String,
}

impl CatalogRecord {
    pub fn new(instance: DecompInstance, created_at: String) -> Self {
        CatalogRecord {
            key: instance.key.clone(),
            generator: instance.provenance.describe(),
            instance,
            created_at,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.instance.validate()?;
        if self.key != self.instance.key {
            return Err(Error::Inconsistent(format!(
                "record key {} does not match instance key {}",
                self.key, self.instance.key
            )));
        }
        Ok(())
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Canonical one-line JSON for an instance.
pub fn instance_line(inst: &DecompInstance) -> String {
    serde_json::to_string(inst).expect("instances serialize")
}

/// Parses catalog text. Fails on the first malformed, inconsistent or
/// duplicate record, reporting its 1-based line number.
pub fn parse_records(text: &str) -> Result<Vec<CatalogRecord>> {
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (n, line) in complete.lines().enumerate() {
        let line_no = n + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fail = |reason: String| Error::CatalogFormat {
            line: line_no,
            reason,
        };
        let rec: CatalogRecord = serde_json::from_str(line).map_err(|e| fail(e.to_string()))?;
        rec.validate().map_err(|e| fail(e.to_string()))?;
        if !seen.insert(rec.key.clone()) {
            return Err(fail(format!("duplicate key {}", rec.key)));
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Vec<CatalogRecord>> {
    let text = fs::read_to_string(path)?;
    parse_records(&text)
}

/// Appends records whose keys are not yet present. Returns how many
/// were written.
pub fn append(path: &Path, records: &[CatalogRecord]) -> Result<usize> {
    let existing = if path.exists() {
        load(path)?
    } else {
        Vec::new()
    };
    let mut keys: HashSet<String> = existing.into_iter().map(|r| r.key).collect();
    let mut file = OpenOptions::new()
        .create(true)
        .read(true)
        .append(true)
        .open(path)?;
    drop_partial_tail(&mut file, path)?;
    let mut written = 0;
    for rec in records {
        if !keys.insert(rec.key.clone()) {
            continue;
        }
        let mut line = rec.to_line();
        line.push('\n');
        file.write_all(line.as_bytes())?;
        file.sync_data()?;
        written += 1;
    }
    Ok(written)
}

fn drop_partial_tail(file: &mut fs::File, path: &Path) -> Result<()> {
    let bytes = fs::read(path)?;
    if bytes.is_empty() || bytes.ends_with(b"\n") {
        return Ok(());
    }
    let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    file.set_len(keep as u64)?;
    file.seek(SeekFrom::End(0))?;
    Ok(())
}

/// Canonical JSONL of a record list.
pub fn export(records: &[CatalogRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_line());
        out.push('\n');
    }
    out
}
