//! Suite aggregates and the rendered percentage table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::TestReport;
use crate::dsl::{InspectFn, PropertySpec, TransformFn};
use crate::translator::TranslatorParams;

/// Version of the report and trace documents.
pub const SCHEMA_VERSION: u32 = 1;

/// Table column of a property: `retValues` if it executes code, else
/// `compiles` if it compiles code, else its single count inspection.
pub fn family_of(spec: &PropertySpec) -> &'static str {
    let used = spec.inspections();
    for f in [InspectFn::RetValues, InspectFn::Compiles] {
        if used.contains(&f) {
            return f.short();
        }
    }
    used.first().map_or("none", |f| f.short())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub seed: u64,
    pub params: TranslatorParams,
    /// Total unique violations over all properties.
    pub tv: usize,
    /// Properties with at least one violation.
    pub vp: usize,
    /// Violated properties using only count inspections.
    pub vsp: usize,
    pub reports: Vec<TestReport>,
}

impl SuiteReport {
    pub fn new(reports: Vec<TestReport>, seed: u64, params: &TranslatorParams) -> Self {
        let violated = || reports.iter().filter(|r| !r.violations.is_empty());
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            seed,
            params: params.clone(),
            tv: reports.iter().map(|r| r.violations.len()).sum(),
            vp: violated().count(),
            vsp: violated().filter(|r| r.syntactic).count(),
            reports,
        }
    }
}

const COLUMNS: [InspectFn; 5] = [
    InspectFn::Arity,
    InspectFn::NumConditionals,
    InspectFn::NumLoops,
    InspectFn::Compiles,
    InspectFn::RetValues,
];

/// Rows are transformations (`none` for 1-safety), columns are property
/// families, cells are violation percentages; `-` marks an absent
/// property and `n/a` one without any completed test.
pub fn render_table(suite: &SuiteReport) -> String {
    let mut cells: BTreeMap<(&str, &str), Vec<&TestReport>> = BTreeMap::new();
    for r in &suite.reports {
        cells
            .entry((r.transform.as_str(), r.family.as_str()))
            .or_default()
            .push(r);
    }
    let mut rows: Vec<&str> = vec!["none"];
    rows.extend(TransformFn::ALL.iter().map(|t| t.name()));
    for r in &suite.reports {
        if !rows.contains(&r.transform.as_str()) {
            rows.push(&r.transform);
        }
    }
    let mut out = String::new();
    let _ = write!(out, "{:<16}", "transform");
    for c in COLUMNS {
        let _ = write!(out, "{:>10}", c.short());
    }
    out.push('\n');
    for row in rows {
        if !COLUMNS.iter().any(|c| cells.contains_key(&(row, c.short()))) {
            continue;
        }
        let _ = write!(out, "{row:<16}");
        for c in COLUMNS {
            let cell = match cells.get(&(row, c.short())) {
                None => "-".to_string(),
                Some(rs) => {
                    let total: usize = rs.iter().map(|r| r.total_tests).sum();
                    let unique: usize = rs.iter().map(|r| r.violations.len()).sum();
                    if total == 0 {
                        "n/a".to_string()
                    } else {
                        format!("{:.2}", 100.0 * unique as f64 / total as f64)
                    }
                }
            };
            let _ = write!(out, "{cell:>10}");
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "\nTV {}  VP {}  VSP {}  ({} properties)",
        suite.tv,
        suite.vp,
        suite.vsp,
        suite.reports.len()
    );
    out
}
