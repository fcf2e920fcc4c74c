//! The Hilbert space representation of the extended ISU algebra on a
//! truncated basis `|n,m,k,r,s,v⟩`, with residual scans of every
//! cataloged relation.
//!
//! `q` enters through `Q = q^{1/4}`; every generator is a weighted shift.

pub mod catalog;
pub mod operator;
pub mod scan;
pub mod window;

pub use catalog::{Catalog, Kind, Relation};
pub use operator::{operator, Convention, GeneratorTable, Letter, SparseOperator, Substitution, REP_GENERATORS};
pub use scan::{Compiled, Residual};
pub use window::{BasisState, BasisWindow, Labels, LABELS};

use crate::check::CheckOutcome;
use crate::nc::NcError;
use crate::scalar::ScalarError;
use crate::tensor::TensorError;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("unknown generator or operator `{0}`")]
    UnknownGenerator(String),
    #[error("bad window: {0}")]
    Window(String),
    #[error("no interior state: the relation needs margin {margin}, enlarge the window {window}")]
    EmptyInterior { margin: i64, window: String },
    #[error("operators `{0}` and `{1}` live on different windows")]
    WindowMismatch(String, String),
    #[error("unknown convention `{0}` (verbatim, adjoint-consistent, corrected)")]
    Convention(String),
    #[error("Q = {0} is outside (0, 1)")]
    Deformation(f64),
    #[error("the lorentz real form SL_q(2,R) does not exist on the Hilbert space level")]
    Lorentz,
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Only the euclidean real form is realised on a Hilbert space.
pub fn require_hilbert(sig: crate::tensor::Signature) -> Result<(), RepError> {
    match sig {
        crate::tensor::Signature::Euclid => Ok(()),
        crate::tensor::Signature::Lorentz => Err(RepError::Lorentz),
    }
}

/// `Q = q^{1/4}`.
pub fn big_q(q: f64) -> Result<f64, RepError> {
    if !(q > 0.0 && q < 1.0) {
        return Err(RepError::Deformation(q));
    }
    Ok(q.powf(0.25))
}

/// Default sample points of `q`.
pub const DEFAULT_Q: [f64; 3] = [0.2, 0.5, 0.9];

/// `lhs − rhs` of a relation compiled at `Q` for one convention.
pub fn compile(rel: &Relation, table: &GeneratorTable, big_q: f64) -> Result<Compiled, RepError> {
    let ev = |p: &crate::ExactPoly| p.try_map_coeffs(|c| c.eval(big_q));
    Ok(Compiled::new(table, &ev(&rel.lhs)?, &ev(&rel.rhs)?))
}

/// Largest interior residual `‖(L − R)ψ‖ / max(1, ‖Lψ‖, ‖tψ‖)` of a
/// relation, `t` the largest single monomial.
pub fn relation_residual(
    rel: &Relation,
    w: &BasisWindow,
    big_q: f64,
    convention: Convention,
) -> Result<Residual, RepError> {
    let table = GeneratorTable::new(convention);
    compile(rel, &table, big_q)?.residual(w, big_q)
}

/// Largest `|⟨ℓ|π(g*)|ℓ+d⟩ − conj⟨ℓ+d|π(g)|ℓ⟩| / max(1, |⟨ℓ+d|π(g)|ℓ⟩|)`
/// over pairs of window states.
pub fn adjoint_residual(g: &str, w: &BasisWindow, big_q: f64, convention: Convention) -> Result<f64, RepError> {
    let table = GeneratorTable::new(convention);
    let partner = REP_GENERATORS
        .iter()
        .find(|(n, _)| *n == g)
        .ok_or_else(|| RepError::UnknownGenerator(g.to_string()))?
        .1;
    let (a, b) = (table.letter(g)?, table.letter(partner)?);
    let mut worst: f64 = 0.0;
    let mut any = false;
    for i in 0..w.len() {
        let l = w.labels_at(i);
        let up: Labels = std::array::from_fn(|j| l[j] + a.shift[j]);
        if !w.contains(&up) {
            continue;
        }
        any = true;
        let f = a.coefficient(&l, big_q);
        let h = b.coefficient(&up, big_q);
        worst = worst.max((h - f).abs() / f.abs().max(1.0));
    }
    if !any {
        return Err(RepError::EmptyInterior {
            margin: a.shift.iter().map(|d| d.abs()).sum(),
            window: w.to_string(),
        });
    }
    Ok(worst)
}

/// `π` of a reconstructed operator: `x2`, `y2`, `kx2`, `ky2`, `x1`, `y1`,
/// `omega`, `M_ij` (`i, j ∈ 1..3`) or `z_i`.  Only columns whose image is
/// fully inside the window are kept.
pub fn reconstruct(
    name: &str,
    w: &Arc<BasisWindow>,
    big_q: f64,
    convention: Convention,
) -> Result<SparseOperator, RepError> {
    let images = catalog::Images::new();
    let p = catalog::reconstructed(&images, name)?;
    let table = GeneratorTable::new(convention);
    let p = p.try_map_coeffs(|c| c.eval(big_q))?;
    Compiled::new(&table, &p, &crate::NumPoly::zero()).materialize(name, w, big_q)
}

/// Residual of one cataloged relation at one `q`.
#[derive(Debug, Clone)]
pub struct RelationResult {
    pub id: String,
    pub check: String,
    pub q: f64,
    pub residual: Result<Residual, String>,
    pub exact: Option<bool>,
    pub kind: Kind,
}

impl RelationResult {
    pub fn passed(&self, tolerance: f64) -> bool {
        matches!(&self.residual, Ok(r) if r.max <= tolerance)
    }
}

/// Settings of a representation scan.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub window: BasisWindow,
    pub qvals: Vec<f64>,
    pub convention: Convention,
    pub tolerance: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            window: BasisWindow::radius(6).expect("valid radius"),
            qvals: DEFAULT_Q.to_vec(),
            convention: Convention::AdjointConsistent,
            tolerance: 1e-10,
        }
    }
}

/// Pairs `(g, g*)` checked for adjointness.
pub const ADJOINT_PAIRS: [&str; 8] = ["alpha", "gamma", "gamma^-1", "v", "rho1", "rho2", "theta1", "theta2"];

/// Every relation of the catalog at every sample point.
pub fn scan(cat: &Catalog, cfg: &ScanConfig) -> Result<Vec<RelationResult>, RepError> {
    let table = GeneratorTable::new(cfg.convention);
    let mut out = Vec::new();
    for &q in &cfg.qvals {
        let bq = big_q(q)?;
        for rel in &cat.relations {
            let residual = compile(rel, &table, bq)?
                .residual(&cfg.window, bq)
                .map_err(|e| e.to_string());
            out.push(RelationResult {
                id: rel.id.clone(),
                check: rel.check.clone(),
                q,
                residual,
                exact: rel.exact,
                kind: rel.kind,
            });
        }
    }
    Ok(out)
}

/// Groups relation results into check outcomes (families report their
/// worst member) and adds adjointness and exact/numeric consistency.
pub fn outcomes(cat: &Catalog, results: &[RelationResult], cfg: &ScanConfig) -> Vec<CheckOutcome> {
    let anchors: BTreeMap<&str, &'static str> = cat.relations.iter().map(|r| (r.check.as_str(), r.anchor)).collect();
    let labels: BTreeMap<&str, &str> = cat
        .relations
        .iter()
        .map(|r| (r.id.as_str(), r.label.as_str()))
        .collect();
    let mut out = Vec::new();
    let mut by_check: BTreeMap<(String, u64), Vec<&RelationResult>> = BTreeMap::new();
    for r in results {
        by_check.entry((r.check.clone(), r.q.to_bits())).or_default().push(r);
    }
    for ((check, qbits), rs) in by_check {
        let q = f64::from_bits(qbits);
        let errors: Vec<&str> = rs
            .iter()
            .filter_map(|r| r.residual.as_ref().err().map(String::as_str))
            .collect();
        let (worst_id, worst) = rs
            .iter()
            .filter_map(|r| r.residual.as_ref().ok().map(|x| (r.id.as_str(), x)))
            .fold(("", None::<&Residual>), |acc, (id, x)| match acc.1 {
                Some(b) if b.max >= x.max => acc,
                _ => (id, Some(x)),
            });
        let failing = rs.iter().filter(|r| !r.passed(cfg.tolerance)).count();
        let mut detail = format!("{} relation(s), {failing} above tolerance", rs.len());
        if let Some(w) = worst {
            if let Some(at) = w.at {
                detail.push_str(&format!(
                    "; worst `{}` at {at}",
                    labels.get(worst_id).copied().unwrap_or(worst_id)
                ));
            }
        }
        if let Some(e) = errors.first() {
            detail.push_str(&format!("; error: {e}"));
        }
        out.push(CheckOutcome {
            id: check.clone(),
            module: "rep",
            anchor: anchors.get(check.as_str()).copied().unwrap_or("").to_string(),
            passed: failing == 0,
            residual: worst.map(|w| w.max),
            detail: Some(detail),
            q: Some(q),
            duration_ms: 0,
        });
    }
    for &q in &cfg.qvals {
        let start = Instant::now();
        let Ok(bq) = big_q(q) else { continue };
        for g in ADJOINT_PAIRS {
            let id = format!("rep.adj.{g}");
            let anchor = "the representation is a *-representation: pi(g*) = pi(g)^dagger";
            match adjoint_residual(g, &cfg.window, bq, cfg.convention) {
                Ok(r) => out.push(CheckOutcome {
                    id,
                    module: "rep",
                    anchor: anchor.into(),
                    passed: r <= cfg.tolerance,
                    residual: Some(r),
                    detail: None,
                    q: Some(q),
                    duration_ms: start.elapsed().as_millis() as u64,
                }),
                Err(e) => out.push(CheckOutcome::error(&id, "rep", anchor, e.to_string(), Some(q), start)),
            }
        }
        let mismatched: Vec<&RelationResult> = results
            .iter()
            .filter(|r| r.q == q && r.residual.is_ok())
            .filter(|r| matches!(r.exact, Some(e) if e != r.passed(cfg.tolerance)))
            .collect();
        let compared = results
            .iter()
            .filter(|r| r.q == q && r.exact.is_some() && r.residual.is_ok())
            .count();
        let mut detail = format!(
            "{} of {compared} relations disagree with the exact algebra",
            mismatched.len()
        );
        if let Some(m) = mismatched.first() {
            detail.push_str(&format!(
                "; first `{}`",
                labels.get(m.id.as_str()).copied().unwrap_or(&m.id)
            ));
        }
        out.push(CheckOutcome {
            id: "rep.consistency".into(),
            module: "rep",
            anchor: "numeric residual vanishes exactly when the exact normal form does".into(),
            passed: mismatched.is_empty(),
            residual: Some(mismatched.len() as f64),
            detail: Some(detail),
            q: Some(q),
            duration_ms: 0,
        });
    }
    out
}

/// The full representation suite for one convention.
pub fn suite(cfg: &ScanConfig) -> Result<Vec<CheckOutcome>, RepError> {
    let start = Instant::now();
    let cat = Catalog::build()?;
    let results = scan(&cat, cfg)?;
    let mut out = outcomes(&cat, &results, cfg);
    let per = start.elapsed().as_millis() as u64 / out.len().max(1) as u64;
    for o in out.iter_mut().filter(|o| o.duration_ms == 0) {
        o.duration_ms = per;
    }
    Ok(out)
}

/// Applies an operator to the basis vector `|ℓ⟩`.
pub fn apply_to_state(op: &SparseOperator, st: &BasisState) -> Option<Vec<(BasisState, Complex64)>> {
    let w = op.window();
    let col = w.index(st)?;
    let mut out: Vec<(BasisState, Complex64)> = op
        .entries()
        .filter(|((_, c), _)| *c == col)
        .map(|(&(r, _), &v)| (w.state(r), v))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Some(out)
}
