//! The JSON check report.

use isoq::CheckOutcome;
use serde::Serialize;
use std::cmp::Ordering;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One line of the report.  Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub module: String,
    pub backend: Backend,
    /// Sample point of a numeric check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    pub signature: String,
    /// Representation convention; only representation checks carry one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    pub paper_anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl CheckReport {
    /// Converts a library outcome.  A check with a sample point is
    /// numeric; an exact pass never carries a residual.
    pub fn from_outcome(o: CheckOutcome, signature: &str, convention: Option<&str>) -> Self {
        let backend = if o.q.is_some() {
            Backend::Numeric
        } else {
            Backend::Exact
        };
        let residual = if backend == Backend::Exact && o.passed {
            None
        } else {
            o.residual
        };
        CheckReport {
            id: o.id,
            module: o.module.to_string(),
            backend,
            q: o.q,
            signature: signature.to_string(),
            convention: convention.map(str::to_string),
            status: if o.passed { Status::Pass } else { Status::Fail },
            residual,
            paper_anchor: o.anchor,
            detail: o.detail,
            duration_ms: Some(o.duration_ms),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Report order: by id, then by sample point (exact before numeric).
pub fn sort(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| {
        a.id.cmp(&b.id).then_with(|| match (a.q, b.q) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(x), Some(y)) => x.total_cmp(&y),
        })
    });
}

/// Serializes a sorted copy of `reports`; `[]` when empty.
pub fn to_json(reports: &[CheckReport]) -> String {
    let mut rs = reports.to_vec();
    sort(&mut rs);
    let mut s = serde_json::to_string_pretty(&rs).expect("reports serialize");
    s.push('\n');
    s
}

pub fn write_report(path: &Path, reports: &[CheckReport]) -> std::io::Result<()> {
    std::fs::write(path, to_json(reports))
}
