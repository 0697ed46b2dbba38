//! Machine-readable reports and the built-in golden tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::classify::OrbitSummary;
use crate::classify::{CandidateOutcome, FamilyRecord, ReplayTrace};

pub const SCHEMA_VERSION: u32 = 1;

/// Expected abelian families, compared field by field.
pub const GOLDEN_ABELIAN: &str = include_str!("../data/golden_abelian.json");
/// The six published nonabelian rows.
pub const GOLDEN_NONABELIAN: &str = include_str!("../data/golden_nonabelian.json");
/// JSON schema every report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("csv output is not utf-8")]
    Utf8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenStatus {
    pub checked: bool,
    pub matches: bool,
    pub differences: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub catalog: String,
    pub records: Vec<FamilyRecord>,
    #[serde(default)]
    pub exclusions: Vec<CandidateOutcome>,
    #[serde(default)]
    pub traces: Vec<ReplayTrace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<OrbitSummary>,
    #[serde(default)]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub golden: Option<GoldenStatus>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: Vec<String>, catalog: impl Into<String>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            catalog: catalog.into(),
            records: Vec::new(),
            exclusions: Vec::new(),
            traces: Vec::new(),
            orbits: None,
            warnings: Vec::new(),
            golden: None,
            elapsed_ms: 0,
        }
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Report, ReportError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_csv(&self) -> Result<String, ReportError> {
        records_to_csv(&self.records)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if !self.records.is_empty() || self.orbits.is_none() {
            let _ = writeln!(
                out,
                "{:<12} {:<16} {:>5} {:<14} {:<6} {:>3} {:>3} {:>10} {:>4}",
                "label", "group", "order", "m", "n", "gC", "gF", "components", "dim"
            );
        }
        for r in &self.records {
            let comps = if r.components_exact {
                r.components.to_string()
            } else {
                format!("<={}", r.components)
            };
            let _ = writeln!(
                out,
                "{:<12} {:<16} {:>5} {:<14} {:<6} {:>3} {:>3} {:>10} {:>4}",
                r.label,
                r.group,
                r.order,
                format!("({})", r.m),
                format!("({})", r.n),
                r.g_c,
                r.g_f,
                comps,
                r.dimension
            );
        }
        if let Some(o) = &self.orbits {
            let _ = writeln!(
                out,
                "{} with m = ({}), n = ({}): {} pairs, {} classes",
                o.group,
                o.m,
                o.n,
                o.pairs,
                o.classes.len()
            );
            for c in &o.classes {
                let _ = writeln!(out, "  size {:>6}  V = {}  W = {}", c.class_size, c.v, c.w);
            }
        }
        for t in &self.traces {
            let passed = t.checks.iter().filter(|c| c.passed).count();
            let _ = writeln!(
                out,
                "replay {}: {passed}/{} claims verified",
                t.family,
                t.checks.len()
            );
            for c in &t.checks {
                let _ = writeln!(
                    out,
                    "  [{}] {}",
                    if c.passed { "ok" } else { "FAIL" },
                    c.claim
                );
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if let Some(g) = &self.golden {
            if g.checked {
                let _ = writeln!(
                    out,
                    "golden table: {}",
                    if g.matches { "match" } else { "MISMATCH" }
                );
                for d in &g.differences {
                    let _ = writeln!(out, "  {d}");
                }
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> Result<String, ReportError> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Table => Ok(self.to_table()),
        }
    }
}

/// One CSV line; column names are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub label: String,
    pub group: String,
    pub order: usize,
    pub m: String,
    pub n: String,
    #[serde(rename = "gC")]
    pub g_c: u32,
    #[serde(rename = "gF")]
    pub g_f: u32,
    pub components: usize,
    pub dimension: usize,
}

impl From<&FamilyRecord> for CsvRow {
    fn from(r: &FamilyRecord) -> Self {
        CsvRow {
            label: r.label.clone(),
            group: r.group.clone(),
            order: r.order,
            m: r.m.clone(),
            n: r.n.clone(),
            g_c: r.g_c,
            g_f: r.g_f,
            components: r.components,
            dimension: r.dimension,
        }
    }
}

pub fn records_to_csv(records: &[FamilyRecord]) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(CsvRow::from(r))?;
    }
    if records.is_empty() {
        w.write_record([
            "label",
            "group",
            "order",
            "m",
            "n",
            "gC",
            "gF",
            "components",
            "dimension",
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| ReportError::Csv(e.into_error().into()))?;
    String::from_utf8(bytes).map_err(|_| ReportError::Utf8)
}

pub fn csv_to_rows(text: &str) -> Result<Vec<CsvRow>, ReportError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<Result<Vec<CsvRow>, _>>()?)
}

/// Row shape of the golden files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub label: String,
    pub group: String,
    pub order: usize,
    pub m: String,
    pub n: String,
    pub g_c: u32,
    pub g_f: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
}

impl GoldenRow {
    fn describe(&self) -> String {
        format!(
            "{} {} (|G| = {}) m = ({}) n = ({}) gC = {} gF = {}",
            self.label, self.group, self.order, self.m, self.n, self.g_c, self.g_f
        )
    }

    fn matches(&self, r: &FamilyRecord) -> bool {
        self.group == r.group
            && self.order == r.order
            && self.m == r.m
            && self.n == r.n
            && self.g_c == r.g_c
            && self.g_f == r.g_f
            && self.components.is_none_or(|c| c == r.components)
            && self.dimension.is_none_or(|d| d == r.dimension)
    }
}

pub fn golden_abelian() -> Vec<GoldenRow> {
    serde_json::from_str(GOLDEN_ABELIAN).expect("built-in golden table parses")
}

pub fn golden_nonabelian() -> Vec<GoldenRow> {
    serde_json::from_str(GOLDEN_NONABELIAN).expect("built-in golden table parses")
}

/// Exact comparison: same rows, same order, same labels.
pub fn compare_exact(golden: &[GoldenRow], records: &[FamilyRecord]) -> GoldenStatus {
    let mut differences = Vec::new();
    if golden.len() != records.len() {
        differences.push(format!(
            "expected {} records, found {}",
            golden.len(),
            records.len()
        ));
    }
    for (g, r) in golden.iter().zip(records) {
        if !g.matches(r) || g.label != r.label {
            differences.push(format!(
                "expected {}; found {} {} m = ({}) gC = {} components = {} dim = {}",
                g.describe(),
                r.label,
                r.group,
                r.m,
                r.g_c,
                r.components,
                r.dimension
            ));
        }
    }
    GoldenStatus {
        checked: true,
        matches: differences.is_empty(),
        differences,
    }
}

/// Containment: every golden row appears among the records.
pub fn compare_contains(golden: &[GoldenRow], records: &[FamilyRecord]) -> GoldenStatus {
    let differences: Vec<String> = golden
        .iter()
        .filter(|g| !records.iter().any(|r| g.matches(r)))
        .map(|g| format!("missing {}", g.describe()))
        .collect();
    GoldenStatus {
        checked: true,
        matches: differences.is_empty(),
        differences,
    }
}
