//! Census records: one line per analyzed group, appendable, re-readable.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

/// One persisted row of the census file. The mathematical fields are
/// deterministic for a given input; only the timestamp varies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub key: String,
    pub order: u64,
    pub spr: String,
    /// prime -> |𝔘_p|/|G|_p as an exact ratio string.
    pub u_ratios: BTreeMap<u64, String>,
    pub phi: Option<String>,
    /// Named check outcomes.
    pub checks: BTreeMap<String, bool>,
    pub version: String,
    pub timestamp: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusFormat {
    Tsv,
    JsonLines,
}

impl CensusRecord {
    pub fn render(&self, format: CensusFormat) -> String {
        match format {
            CensusFormat::JsonLines => serde_json::to_string(self).expect("record serializes"),
            CensusFormat::Tsv => {
                let ratios = self
                    .u_ratios
                    .iter()
                    .map(|(p, r)| format!("{}={}", p, r))
                    .collect::<Vec<_>>()
                    .join(";");
                let checks = self
                    .checks
                    .iter()
                    .map(|(name, ok)| format!("{}={}", name, ok))
                    .collect::<Vec<_>>()
                    .join(";");
                format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    self.key,
                    self.order,
                    self.spr,
                    if ratios.is_empty() { "-" } else { &ratios },
                    self.phi.as_deref().unwrap_or("-"),
                    if checks.is_empty() { "-" } else { &checks },
                    self.version,
                    self.timestamp
                )
            }
        }
    }

    pub fn parse_line(line: &str) -> Option<CensusRecord> {
        let line = line.trim();
        if line.is_empty() {
            return None;
        }
        if line.starts_with('{') {
            return serde_json::from_str(line).ok();
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 8 {
            return None;
        }
        let parse_pairs = |s: &str| -> Option<Vec<(String, String)>> {
            if s == "-" {
                return Some(Vec::new());
            }
            s.split(';')
                .map(|kv| {
                    kv.split_once('=')
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                })
                .collect()
        };
        let mut u_ratios = BTreeMap::new();
        for (k, v) in parse_pairs(fields[3])? {
            u_ratios.insert(k.parse().ok()?, v);
        }
        let mut checks = BTreeMap::new();
        for (k, v) in parse_pairs(fields[5])? {
            checks.insert(k, v.parse().ok()?);
        }
        Some(CensusRecord {
            key: fields[0].to_string(),
            order: fields[1].parse().ok()?,
            spr: fields[2].to_string(),
            u_ratios,
            phi: (fields[4] != "-").then(|| fields[4].to_string()),
            checks,
            version: fields[6].to_string(),
            timestamp: fields[7].parse().ok()?,
        })
    }

}

/// Appends one record to the census file.
pub fn append_record(
    path: &Path,
    record: &CensusRecord,
    format: CensusFormat,
) -> anyhow::Result<()> {
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("cannot open census file {}", path.display()))?;
    writeln!(file, "{}", record.render(format))?;
    Ok(())
}

/// Reads every parseable record; malformed lines are skipped and counted.
pub fn read_census(path: &Path) -> anyhow::Result<(Vec<CensusRecord>, usize)> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok((Vec::new(), 0)),
        Err(e) => {
            return Err(anyhow::Error::new(e)
                .context(format!("cannot read census file {}", path.display())))
        }
    };
    let mut records = Vec::new();
    let mut warnings = 0;
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        match CensusRecord::parse_line(line) {
            Some(r) => records.push(r),
            None => warnings += 1,
        }
    }
    Ok((records, warnings))
}
