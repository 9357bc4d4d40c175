//! Batch run reports: one row per processed spec, plus totals.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Witness,
    Exhausted,
    Capped,
    Emitted,
    Sat,
    Unknown,
    Unsat,
    Error,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Witness => "witness",
            Outcome::Exhausted => "exhausted",
            Outcome::Capped => "capped",
            Outcome::Emitted => "emitted",
            Outcome::Sat => "sat",
            Outcome::Unknown => "unknown",
            Outcome::Unsat => "unsat",
            Outcome::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub name: String,
    pub file: String,
    pub mode: String,
    pub result: Outcome,
    /// Short human-readable detail: verdict, error message, stop point.
    pub detail: String,
    pub elapsed_ms: u64,
    pub artifacts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunReport {
    pub rows: Vec<Row>,
    pub totals: BTreeMap<&'static str, usize>,
}

impl RunReport {
    pub fn new(rows: Vec<Row>) -> Self {
        let mut totals = BTreeMap::new();
        for r in &rows {
            *totals.entry(r.result.name()).or_insert(0) += 1;
        }
        totals.insert("total", rows.len());
        RunReport { rows, totals }
    }

    pub fn count(&self, o: Outcome) -> usize {
        self.totals.get(o.name()).copied().unwrap_or(0)
    }

    pub fn has_errors(&self) -> bool {
        self.count(Outcome::Error) > 0
    }

    /// The report with wall-clock fields zeroed, for comparing runs.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for row in &mut r.rows {
            row.elapsed_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
        writeln!(f, "{:<w$}  {:<9}  detail", "spec", "result")?;
        for r in &self.rows {
            writeln!(f, "{:<w$}  {:<9}  {}", r.name, r.result.name(), r.detail)?;
        }
        let totals: Vec<String> = self.totals.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", totals.join(" "))
    }
}
