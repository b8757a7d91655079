//! Check results and their JSON/CSV renderings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// An open-question experiment found an example; not a failure.
    Discovery,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Discovery => "discovery",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub subject: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    /// Counts of cases examined.
    #[serde(default)]
    pub stats: BTreeMap<String, u64>,
    /// Computed values worth reporting, such as `𝔣(G)`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    pub seed: u64,
}

impl CheckResult {
    pub fn new(check: &str, subject: &str, seed: u64) -> Self {
        Self {
            check: check.to_string(),
            subject: subject.to_string(),
            status: Status::Pass,
            reason: None,
            witness: None,
            stats: BTreeMap::new(),
            values: BTreeMap::new(),
            seed,
        }
    }

    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skipped;
        self.reason = Some(reason.into());
        self
    }

    pub fn fail(mut self, reason: impl Into<String>, witness: serde_json::Value) -> Self {
        self.status = Status::Fail;
        self.reason = Some(reason.into());
        self.witness = Some(witness);
        self
    }

    pub fn discovery(mut self, reason: impl Into<String>, witness: serde_json::Value) -> Self {
        self.status = Status::Discovery;
        self.reason = Some(reason.into());
        self.witness = Some(witness);
        self
    }

    pub fn stat(&mut self, key: &str, v: u64) {
        self.stats.insert(key.to_string(), v);
    }

    pub fn bump(&mut self, key: &str, by: u64) {
        *self.stats.entry(key.to_string()).or_insert(0) += by;
    }

    pub fn value(&mut self, key: &str, v: impl ToString) {
        self.values.insert(key.to_string(), v.to_string());
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(crate::Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    check: &'a str,
    subject: &'a str,
    status: Status,
    reason: &'a str,
    stats: String,
    values: String,
    witness: String,
    seed: u64,
}

fn join_map<V: fmt::Display>(m: &BTreeMap<String, V>) -> String {
    m.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn render(results: &[CheckResult], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(results)? + "\n"),
        Format::Csv => render_csv(results),
    }
}

/// One row per result; stats and values flattened to `key=value;…`.
pub fn render_csv(results: &[CheckResult]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in results {
        let row = CsvRow {
            check: &r.check,
            subject: &r.subject,
            status: r.status,
            reason: r.reason.as_deref().unwrap_or(""),
            stats: join_map(&r.stats),
            values: join_map(&r.values),
            witness: r
                .witness
                .as_ref()
                .map(|w| w.to_string())
                .unwrap_or_default(),
            seed: r.seed,
        };
        w.serialize(row)
            .map_err(|e| crate::Error::Parse(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| crate::Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| crate::Error::Parse(e.to_string()))
}

/// Counts per status.
pub fn summarize(results: &[CheckResult]) -> BTreeMap<Status, usize> {
    let mut out = BTreeMap::new();
    for r in results {
        *out.entry(r.status).or_insert(0) += 1;
    }
    out
}
