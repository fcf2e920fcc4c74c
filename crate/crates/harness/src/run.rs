//! Runs the module suites and turns their outcomes into reports.

use crate::config::{BackendChoice, Options};
use crate::report::{self, Backend, CheckReport, Status};
use crate::HarnessError;
use isoq::rep::{self, ScanConfig};
use isoq::{embedding, nc, tensor, CheckOutcome};
use qvt::Registry;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Instant;

fn convert(out: Vec<CheckOutcome>, opts: &Options, convention: Option<&str>) -> Vec<CheckReport> {
    out.into_iter()
        .map(|o| CheckReport::from_outcome(o, opts.signature.as_str(), convention))
        .collect()
}

/// Drops reports outside the selected backend and id prefix, and timings
/// when they are switched off; then sorts.
pub fn select(mut reports: Vec<CheckReport>, opts: &Options) -> Vec<CheckReport> {
    reports.retain(|r| match opts.backend {
        None => true,
        Some(BackendChoice::Exact) => r.backend == Backend::Exact,
        Some(BackendChoice::Numeric) => r.backend == Backend::Numeric,
    });
    if let Some(p) = &opts.only {
        reports.retain(|r| r.id.starts_with(p.as_str()));
    }
    if !opts.timing {
        for r in &mut reports {
            r.duration_ms = None;
        }
    }
    report::sort(&mut reports);
    reports
}

pub fn tensor_checks(opts: &Options) -> Vec<CheckReport> {
    convert(tensor::suite(opts.signature, &opts.qvals), opts, None)
}

pub fn nc_checks(opts: &Options) -> Vec<CheckReport> {
    convert(nc::suite(opts.signature), opts, None)
}

pub fn embed_checks(opts: &Options) -> Vec<CheckReport> {
    convert(embedding::suite(opts.signature), opts, None)
}

/// The representation scan, one thread per sample point.
pub fn rep_checks(opts: &Options) -> Result<Vec<CheckReport>, HarnessError> {
    rep::require_hilbert(opts.signature)?;
    let name = opts.convention.name();
    let results: Vec<_> = thread::scope(|sc| {
        let handles: Vec<_> = opts
            .qvals
            .iter()
            .map(|&q| {
                let cfg = ScanConfig {
                    window: opts.window.clone(),
                    qvals: vec![q],
                    convention: opts.convention,
                    tolerance: opts.tolerance,
                };
                sc.spawn(move || rep::suite(&cfg))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan thread")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(convert(r?, opts, Some(name)));
    }
    Ok(out)
}

/// `.qvt` files of a directory in name order.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| HarnessError::Io(dir.display().to_string(), e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "qvt"))
        .collect();
    files.sort();
    Ok(files)
}

/// Every check of a script, on the exact backend and/or at every sample
/// point.  Ids are `dsl.<file stem>.<n>`; the anchor is the file stem.
pub fn dsl_checks(path: &Path, opts: &Options) -> Result<Vec<CheckReport>, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(path.display().to_string(), e))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let reg = Registry::new(opts.signature);
    let checked = qvt::load(&text, &reg).map_err(|e| HarnessError::Dsl(path.display().to_string(), e))?;
    let mut backends = Vec::new();
    if opts.backend != Some(BackendChoice::Numeric) {
        backends.push(qvt::Backend::Exact);
    }
    if opts.backend != Some(BackendChoice::Exact) {
        backends.extend(opts.qvals.iter().map(|&q| qvt::Backend::Numeric { q }));
    }
    let mut out = Vec::new();
    for b in backends {
        let results = qvt::run(&checked, &reg, b, opts.tolerance)
            .map_err(|e| HarnessError::Dsl(path.display().to_string(), e))?;
        for r in results {
            let q = match b {
                qvt::Backend::Exact => None,
                qvt::Backend::Numeric { q } => Some(q),
            };
            let mut detail = format!("line {}: {}", r.line, r.statement);
            if let Some(rel) = r.relative {
                detail.push_str(&format!(" (relative {rel:.3e})"));
            }
            out.push(CheckReport {
                id: format!("dsl.{stem}.{}", r.index),
                module: "dsl".into(),
                backend: if q.is_some() { Backend::Numeric } else { Backend::Exact },
                q,
                signature: opts.signature.as_str().into(),
                convention: None,
                status: if r.passed { Status::Pass } else { Status::Fail },
                residual: if q.is_none() && r.passed { None } else { r.residual },
                paper_anchor: stem.clone(),
                detail: Some(detail),
                duration_ms: Some(r.elapsed.as_millis() as u64),
            });
        }
    }
    Ok(out)
}

/// A script that does not load becomes one failing report.
fn dsl_or_failure(path: &Path, opts: &Options) -> Vec<CheckReport> {
    let start = Instant::now();
    dsl_checks(path, opts).unwrap_or_else(|e| {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let o = CheckOutcome::error(&format!("dsl.{stem}.load"), "dsl", &stem, e.to_string(), None, start);
        convert(vec![o], opts, None)
    })
}

/// Everything: tensor, rewriting, embedding and corpus checks, and the
/// representation scan for the euclidean signature (the lorentz form has
/// no Hilbert space representation, so it is left out there).
pub fn suite(opts: &Options) -> Result<Vec<CheckReport>, HarnessError> {
    let wants = |prefix: &str| {
        opts.only
            .as_deref()
            .is_none_or(|o| o.starts_with(prefix) || prefix.starts_with(o))
    };
    let files = if wants("dsl.") {
        corpus_files(&opts.corpus)?
    } else {
        Vec::new()
    };
    let run_rep =
        wants("rep.") && opts.backend != Some(BackendChoice::Exact) && rep::require_hilbert(opts.signature).is_ok();
    let mut out = thread::scope(|sc| -> Result<Vec<CheckReport>, HarnessError> {
        let t = sc.spawn(|| {
            if wants("tensor.") {
                tensor_checks(opts)
            } else {
                Vec::new()
            }
        });
        let n = sc.spawn(|| if wants("nc.") { nc_checks(opts) } else { Vec::new() });
        let e = sc.spawn(|| {
            if wants("embed.") {
                embed_checks(opts)
            } else {
                Vec::new()
            }
        });
        let d = sc.spawn(|| files.iter().flat_map(|f| dsl_or_failure(f, opts)).collect::<Vec<_>>());
        let r = run_rep.then(|| rep_checks(opts));
        let mut out = Vec::new();
        for h in [t, n, e, d] {
            out.extend(h.join().expect("suite thread"));
        }
        if let Some(r) = r {
            out.extend(r?);
        }
        Ok(out)
    })?;
    out = select(out, opts);
    Ok(out)
}
