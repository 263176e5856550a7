//! Deterministic serialization: CSV tables, their JSON mirrors, and run
//! manifests.
//!
//! Emitted bytes are a pure function of the data: stable row order, LF line
//! endings, floats printed in shortest round-trip form. JSON data files embed
//! only the reproducible part of the manifest; the timestamp and output
//! digests live in the sidecar `manifest.json` so that re-running a command
//! yields byte-identical data files.

use std::io::Write as _;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::asymptotics::DegreeDistribution;
use crate::error::{Error, Result};
use crate::expectation::ExpectedCountTable;
use crate::model::DegreeHistogram;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub k: u32,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectationRow {
    pub k: u32,
    pub t: u64,
    pub expected: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub k: u32,
    pub pk: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail: Option<f64>,
}

/// One emitted data table.
#[derive(Debug, Clone, PartialEq)]
pub enum Table {
    /// `k,count` rows, ascending in `k`.
    Histogram(Vec<HistogramRow>),
    /// `k,t,expected` rows, ascending in `(k, t)`.
    Expectation(Vec<ExpectationRow>),
    /// `k,pk[,tail]` rows plus the mass outside the table.
    Limit { rows: Vec<LimitRow>, tail_mass: f64 },
}

impl Table {
    pub fn from_histogram(hist: &DegreeHistogram) -> Self {
        Table::Histogram(
            hist.counts.iter().map(|(&k, &count)| HistogramRow { k, count }).collect(),
        )
    }

    pub fn from_expected_counts(table: &ExpectedCountTable) -> Self {
        let mut rows = Vec::with_capacity(table.kmax as usize * table.times.len());
        for k in 1..=table.kmax {
            for (i, &t) in table.times.iter().enumerate() {
                rows.push(ExpectationRow { k, t, expected: table.columns[i][(k - 1) as usize] });
            }
        }
        Table::Expectation(rows)
    }

    pub fn from_distribution(dist: &DegreeDistribution, tail: Option<&DegreeDistribution>) -> Self {
        let rows = (1..=dist.kmax())
            .map(|k| LimitRow { k, pk: dist.value(k), tail: tail.map(|t| t.value(k)) })
            .collect();
        Table::Limit { rows, tail_mass: dist.tail_mass }
    }

    fn header(&self) -> &'static str {
        match self {
            Table::Histogram(_) => "k,count",
            Table::Expectation(_) => "k,t,expected",
            Table::Limit { rows, .. } => {
                if rows.first().is_some_and(|r| r.tail.is_some()) {
                    "k,pk,tail"
                } else {
                    "k,pk"
                }
            }
        }
    }

    /// CSV bytes: header, rows, and for limit tables a `# tail_mass,<v>`
    /// footer record.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(self.header());
        out.push('\n');
        match self {
            Table::Histogram(rows) => {
                for row in rows {
                    out.push_str(&format!("{},{}\n", row.k, row.count));
                }
            }
            Table::Expectation(rows) => {
                for row in rows {
                    out.push_str(&format!("{},{},{}\n", row.k, row.t, row.expected));
                }
            }
            Table::Limit { rows, tail_mass } => {
                for row in rows {
                    match row.tail {
                        Some(tail) => out.push_str(&format!("{},{},{}\n", row.k, row.pk, tail)),
                        None => out.push_str(&format!("{},{}\n", row.k, row.pk)),
                    }
                }
                out.push_str(&format!("# tail_mass,{tail_mass}\n"));
            }
        }
        out
    }

    /// Parses CSV produced by [`Table::to_csv`]; the header line selects the
    /// table kind.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|line| !line.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty table".into()))?;
        let bad = |line: &str| Error::Parse(format!("malformed row {line:?}"));
        let mut tail_mass: Option<f64> = None;
        let mut data_lines = Vec::new();
        for line in lines {
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(value) = rest.strip_prefix("tail_mass,") {
                    tail_mass =
                        Some(value.trim().parse().map_err(|_| bad(line))?);
                }
                continue;
            }
            data_lines.push(line);
        }
        match header {
            "k,count" => {
                let rows = data_lines
                    .iter()
                    .map(|line| {
                        let (k, count) = line.split_once(',').ok_or_else(|| bad(line))?;
                        Ok(HistogramRow {
                            k: k.parse().map_err(|_| bad(line))?,
                            count: count.parse().map_err(|_| bad(line))?,
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok(Table::Histogram(rows))
            }
            "k,t,expected" => {
                let rows = data_lines
                    .iter()
                    .map(|line| {
                        let mut parts = line.split(',');
                        let mut next = || parts.next().ok_or_else(|| bad(line));
                        let k = next()?.parse().map_err(|_| bad(line))?;
                        let t = next()?.parse().map_err(|_| bad(line))?;
                        let expected = next()?.parse().map_err(|_| bad(line))?;
                        Ok(ExpectationRow { k, t, expected })
                    })
                    .collect::<Result<_>>()?;
                Ok(Table::Expectation(rows))
            }
            "k,pk" | "k,pk,tail" => {
                let rows = data_lines
                    .iter()
                    .map(|line| {
                        let mut parts = line.split(',');
                        let mut next = || parts.next().ok_or_else(|| bad(line));
                        let k = next()?.parse().map_err(|_| bad(line))?;
                        let pk = next()?.parse().map_err(|_| bad(line))?;
                        let tail = match parts.next() {
                            Some(v) => Some(v.parse().map_err(|_| bad(line))?),
                            None => None,
                        };
                        Ok(LimitRow { k, pk, tail })
                    })
                    .collect::<Result<_>>()?;
                let tail_mass = tail_mass
                    .ok_or_else(|| Error::Parse("limit table lacks the tail_mass footer".into()))?;
                Ok(Table::Limit { rows, tail_mass })
            }
            other => Err(Error::Parse(format!("unknown table header {other:?}"))),
        }
    }

    /// JSON mirror: one top-level object `{manifest, schema_version, rows}`
    /// (plus `tail_mass` for limit tables).
    pub fn to_json(&self, manifest: &ManifestCore) -> String {
        let rows = match self {
            Table::Histogram(rows) => serde_json::to_value(rows),
            Table::Expectation(rows) => serde_json::to_value(rows),
            Table::Limit { rows, .. } => serde_json::to_value(rows),
        }
        .expect("table rows serialize");
        let mut doc = serde_json::json!({
            "manifest": manifest,
            "schema_version": SCHEMA_VERSION,
            "rows": rows,
        });
        if let Table::Limit { tail_mass, .. } = self {
            doc["tail_mass"] = serde_json::json!(tail_mass);
        }
        let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
        text.push('\n');
        text
    }

    /// Parses a JSON data file back into the table and its embedded manifest.
    pub fn from_json(text: &str) -> Result<(Self, ManifestCore)> {
        let doc: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let manifest: ManifestCore = serde_json::from_value(
            doc.get("manifest").cloned().ok_or_else(|| Error::Parse("missing manifest".into()))?,
        )
        .map_err(|e| Error::Parse(e.to_string()))?;
        let rows = doc.get("rows").cloned().ok_or_else(|| Error::Parse("missing rows".into()))?;
        let first = rows.get(0);
        let table = if let Some(tail_mass) = doc.get("tail_mass") {
            Table::Limit {
                rows: serde_json::from_value(rows.clone())
                    .map_err(|e| Error::Parse(e.to_string()))?,
                tail_mass: tail_mass.as_f64().ok_or_else(|| Error::Parse("bad tail_mass".into()))?,
            }
        } else if first.is_some_and(|r| r.get("count").is_some()) || first.is_none() {
            Table::Histogram(
                serde_json::from_value(rows).map_err(|e| Error::Parse(e.to_string()))?,
            )
        } else if first.is_some_and(|r| r.get("expected").is_some()) {
            Table::Expectation(
                serde_json::from_value(rows).map_err(|e| Error::Parse(e.to_string()))?,
            )
        } else {
            Table::Limit {
                rows: serde_json::from_value(rows).map_err(|e| Error::Parse(e.to_string()))?,
                tail_mass: f64::NAN,
            }
        };
        Ok((table, manifest))
    }
}

/// The reproducible identity of one invocation: everything needed to replay
/// it, and nothing that varies between identical runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestCore {
    /// Subcommand name.
    pub command: String,
    /// Full argument vector as invoked (excluding the binary name).
    pub args: Vec<String>,
    /// Resolved parameters echoed as structured data.
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub version: String,
}

/// Sidecar manifest: the reproducible core plus when it ran and what it
/// produced. Digests cover the data files only, so replaying the manifest
/// must reproduce them bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    #[serde(flatten)]
    pub core: ManifestCore,
    pub timestamp_unix: u64,
    pub outputs: Vec<OutputDigest>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDigest {
    /// File name relative to the manifest's directory.
    pub path: String,
    pub sha256: String,
}

impl RunManifest {
    pub fn new(core: ManifestCore, outputs: Vec<OutputDigest>) -> Self {
        let timestamp_unix =
            SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Self { core, timestamp_unix, outputs }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes via a temporary file in the same directory and renames into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
