//! Outcome of a single named verification.

use std::time::Instant;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    /// Hierarchical id, e.g. `embed.rtt.so3`.
    pub id: String,
    pub module: &'static str,
    /// Where in the source the verified claim lives, in words.
    pub anchor: String,
    pub passed: bool,
    /// Numeric residual; `None` for exact checks that pass.  Exact
    /// failures report the number of identities with nonzero normal form.
    pub residual: Option<f64>,
    pub detail: Option<String>,
    /// Sample point `q` of a numeric check; `None` for exact checks.
    pub q: Option<f64>,
    pub duration_ms: u64,
}

impl CheckOutcome {
    /// An exact check: `failures` is the number of identities that did
    /// not reduce to zero; with `expect_fail` the check is a negative
    /// control that passes when at least one identity fails.
    pub fn exact(
        id: &str,
        module: &'static str,
        anchor: &str,
        failures: usize,
        total: usize,
        expect_fail: bool,
        start: Instant,
    ) -> Self {
        let passed = if expect_fail { failures > 0 } else { failures == 0 };
        CheckOutcome {
            id: id.to_string(),
            module,
            anchor: anchor.to_string(),
            passed,
            residual: if failures == 0 { None } else { Some(failures as f64) },
            detail: Some(format!(
                "{failures} of {total} identities nonzero{}",
                if expect_fail { " (negative control)" } else { "" }
            )),
            q: None,
            duration_ms: start.elapsed().as_millis() as u64,
        }
    }

    /// A check that could not be run at all.
    pub fn error(id: &str, module: &'static str, anchor: &str, msg: String, q: Option<f64>, start: Instant) -> Self {
        CheckOutcome {
            id: id.to_string(),
            module,
            anchor: anchor.to_string(),
            passed: false,
            residual: None,
            detail: Some(format!("error: {msg}")),
            q,
            duration_ms: start.elapsed().as_millis() as u64,
        }
    }
}
