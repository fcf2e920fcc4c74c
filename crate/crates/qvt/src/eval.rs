//! Exact and numeric evaluation of typechecked scripts.

use crate::ast::{Expr, Factor, Stmt, Term};
use crate::typecheck::{Checked, Shapes};
use crate::QvtError;
use isoq::scalar::ScalarError;
use isoq::tensor::{constant, contract, ContractionPlan, Factor as PlanFactor};
use isoq::{Coeff, ExactTensor, Scalar, Signature, Tensor};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Registry constants for one signature, built on first use.
#[derive(Debug)]
pub struct Registry {
    signature: Signature,
    cache: Mutex<BTreeMap<String, ExactTensor>>,
}

impl Registry {
    pub fn new(signature: Signature) -> Self {
        Registry {
            signature,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn get(&self, name: &str) -> Option<ExactTensor> {
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(t) = cache.get(name) {
            return Some(t.clone());
        }
        let t = constant(name, self.signature).ok()?;
        cache.insert(name.to_string(), t.clone());
        Some(t)
    }
}

impl Shapes for Registry {
    fn shape(&self, name: &str) -> Option<Vec<usize>> {
        self.get(name).map(|t| t.extents().to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Backend {
    Exact,
    /// Numeric evaluation at `q`, with `Q = q^{1/4}`.
    Numeric {
        q: f64,
    },
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::Numeric { .. } => write!(f, "numeric"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    /// 1-based number of the check within its script.
    pub index: usize,
    pub line: usize,
    pub statement: String,
    pub backend: Backend,
    pub passed: bool,
    /// Largest residual entry (numeric backend).
    pub residual: Option<f64>,
    /// Whether the residual tensor is identically zero (exact backend).
    pub exact_zero: Option<bool>,
    /// Residual divided by the largest single-term magnitude (numeric
    /// backend), the scale at which float cancellation happens.
    pub relative: Option<f64>,
    pub elapsed: Duration,
}

struct Evaluator<'a, T: Coeff> {
    tensors: BTreeMap<String, Tensor<T>>,
    base: &'a dyn Fn(&str) -> Result<Tensor<T>, QvtError>,
    lift: &'a dyn Fn(&Scalar) -> Result<T, QvtError>,
}

impl<T: Coeff> Evaluator<'_, T> {
    fn load(&mut self, name: &str) -> Result<(), QvtError> {
        if !self.tensors.contains_key(name) {
            let t = (self.base)(name)?;
            self.tensors.insert(name.to_string(), t);
        }
        Ok(())
    }

    /// The value of `e` with slots in `order`, and the largest magnitude
    /// bound `|c|·Π max|factor|` over its terms.
    fn expr(&mut self, e: &Expr, order: &[String]) -> Result<(Tensor<T>, f64), QvtError> {
        let mut acc: Option<Tensor<T>> = None;
        let mut scale: f64 = 0.0;
        for (sign, t) in &e.terms {
            let (mut v, sc) = self.term(t, order)?;
            scale = scale.max(sc);
            if *sign == crate::ast::Sign::Minus {
                v = v.scale(&-T::one());
            }
            acc = Some(match acc {
                None => v,
                Some(a) => a.add(&v),
            });
        }
        Ok((acc.unwrap_or_else(|| Tensor::scalar(T::zero())), scale))
    }

    fn term(&mut self, t: &Term, order: &[String]) -> Result<(Tensor<T>, f64), QvtError> {
        let c = match &t.coeff {
            Some(c) => (self.lift)(c)?,
            None => T::one(),
        };
        let mut scale = c.magnitude();
        if t.factors.is_empty() {
            return Ok((Tensor::scalar(c), scale));
        }
        let mut groups = Vec::new();
        for f in &t.factors {
            match f {
                Factor::Tensor { name, .. } => {
                    self.load(name)?;
                    scale *= self.tensors[name].max_abs();
                }
                Factor::Group(g) => {
                    let (v, sc) = self.expr(g, &g.free_names())?;
                    scale *= sc;
                    groups.push((v, g.free_names()));
                }
            }
        }
        let mut plan = ContractionPlan {
            factors: Vec::new(),
            output: order.to_vec(),
            prefactor: c,
        };
        let mut g = groups.iter();
        for f in &t.factors {
            let (tensor, indices) = match f {
                Factor::Tensor { name, indices, .. } => (&self.tensors[name], indices.clone()),
                Factor::Group(_) => {
                    let (t, ix) = g.next().expect("one evaluated group per group factor");
                    (t, ix.clone())
                }
            };
            plan.factors.push(PlanFactor { tensor, indices });
        }
        Ok((contract(&plan)?, scale))
    }

    /// Residual of every check, in order.
    fn run(
        &mut self,
        checked: &Checked,
        mut each: impl FnMut(usize, &Stmt, Residual<T>, Duration),
    ) -> Result<(), QvtError> {
        let mut k = 0;
        for stmt in &checked.script.stmts {
            let start = Instant::now();
            match stmt {
                Stmt::Let { name, expr, .. } => {
                    let (v, _) = self.expr(expr, &expr.free_names())?;
                    self.tensors.insert(name.clone(), v);
                }
                Stmt::Check { lhs, rhs, .. } => {
                    let order = lhs.free_names();
                    let (l, a) = self.expr(lhs, &order)?;
                    let (r, b) = self.expr(rhs, &order)?;
                    let r = Residual {
                        tensor: l.sub(&r),
                        scale: a.max(b).max(1.0),
                    };
                    k += 1;
                    each(k, stmt, r, start.elapsed());
                }
            }
        }
        Ok(())
    }
}

fn exact_base(reg: &Registry) -> impl Fn(&str) -> Result<ExactTensor, QvtError> + '_ {
    move |name| {
        reg.get(name).ok_or_else(|| QvtError::UnknownTensor {
            name: name.to_string(),
            line: 0,
            col: 0,
        })
    }
}

fn pole(q: f64) -> impl Fn(ScalarError) -> QvtError {
    move |e| QvtError::Pole { q, msg: e.to_string() }
}

fn big_q(q: f64) -> Result<f64, QvtError> {
    if q > 0.0 && q < 1.0 {
        Ok(q.powf(0.25))
    } else {
        Err(QvtError::Deformation(q))
    }
}

/// `lhs − rhs` of a check, with `scale = max(1, largest |c|·Π max|factor|
/// over the terms of either side)` (meaningful for numeric tensors).
#[derive(Debug, Clone)]
pub struct Residual<T> {
    pub tensor: Tensor<T>,
    pub scale: f64,
}

impl Residual<Complex64> {
    pub fn relative(&self) -> f64 {
        self.tensor.max_abs() / self.scale
    }
}

/// Residual of every check over the exact field.
pub fn residuals_exact(checked: &Checked, reg: &Registry) -> Result<Vec<Residual<Scalar>>, QvtError> {
    let base = exact_base(reg);
    let lift = |c: &Scalar| Ok(c.clone());
    let mut ev = Evaluator {
        tensors: BTreeMap::new(),
        base: &base,
        lift: &lift,
    };
    let mut out = Vec::new();
    ev.run(checked, |_, _, r, _| out.push(r))?;
    Ok(out)
}

/// Residual of every check evaluated in floating point at `q`.
pub fn residuals_numeric(checked: &Checked, reg: &Registry, q: f64) -> Result<Vec<Residual<Complex64>>, QvtError> {
    let bq = big_q(q)?;
    let exact = exact_base(reg);
    let base = |name: &str| exact(name)?.eval(bq).map_err(pole(q));
    let lift = |c: &Scalar| c.eval(bq).map_err(pole(q));
    let mut ev = Evaluator {
        tensors: BTreeMap::new(),
        base: &base,
        lift: &lift,
    };
    let mut out = Vec::new();
    ev.run(checked, |_, _, r, _| out.push(r))?;
    Ok(out)
}

/// Runs every check.  Exact checks pass when the residual tensor is
/// identically zero; numeric ones when its largest entry is at most
/// `tolerance`.
pub fn run(checked: &Checked, reg: &Registry, backend: Backend, tolerance: f64) -> Result<Vec<CheckResult>, QvtError> {
    let mut out = Vec::new();
    let line = |s: &Stmt| match s {
        Stmt::Check { pos, .. } | Stmt::Let { pos, .. } => pos.line,
    };
    match backend {
        Backend::Exact => {
            let base = exact_base(reg);
            let lift = |c: &Scalar| Ok(c.clone());
            let mut ev = Evaluator {
                tensors: BTreeMap::new(),
                base: &base,
                lift: &lift,
            };
            ev.run(checked, |index, s, r, elapsed| {
                let zero = r.tensor.is_zero();
                out.push(CheckResult {
                    index,
                    line: line(s),
                    statement: s.to_string(),
                    backend,
                    passed: zero,
                    residual: None,
                    exact_zero: Some(zero),
                    relative: None,
                    elapsed,
                });
            })?;
        }
        Backend::Numeric { q } => {
            let bq = big_q(q)?;
            let exact = exact_base(reg);
            let base = |name: &str| exact(name)?.eval(bq).map_err(pole(q));
            let lift = |c: &Scalar| c.eval(bq).map_err(pole(q));
            let mut ev = Evaluator {
                tensors: BTreeMap::new(),
                base: &base,
                lift: &lift,
            };
            ev.run(checked, |index, s, r, elapsed| {
                let m = r.tensor.max_abs();
                out.push(CheckResult {
                    index,
                    line: line(s),
                    statement: s.to_string(),
                    backend,
                    passed: m <= tolerance,
                    residual: Some(m),
                    exact_zero: None,
                    relative: Some(r.relative()),
                    elapsed,
                });
            })?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse, typecheck};

    fn go(text: &str, backend: Backend) -> Vec<CheckResult> {
        let reg = Registry::new(Signature::Euclid);
        let c = typecheck(&parse(text).unwrap(), &reg).unwrap();
        run(&c, &reg, backend, 1e-10).unwrap()
    }

    #[test]
    fn symmetric_projector_decomposes() {
        let r = go("check projS[m,n,r,si] == cg[i,m,n]*cg[i,r,si];", Backend::Exact);
        assert!(r[0].passed && r[0].exact_zero == Some(true) && r[0].residual.is_none());
        // The transposed matrix on the right gives a different tensor.
        let r = go("check projS[m,n,r,si] == cg[i,m,n]*cgT[i,r,si];", Backend::Exact);
        assert!(!r[0].passed);
    }

    #[test]
    fn wrong_script_fails() {
        let r = go("check eps_lo[a,b] == eps_hi[a,b];", Backend::Exact);
        assert!(!r[0].passed);
        let r = go("check eps_lo[a,b] == eps_hi[a,b];", Backend::Numeric { q: 0.5 });
        assert!(!r[0].passed && r[0].residual.unwrap() > 0.1);
    }

    #[test]
    fn epsilon_trace() {
        let text = "check eps_hi[a,b]*eps_lo[a,b] == -(mu + mu^-1);";
        assert!(go(text, Backend::Exact)[0].passed);
        assert!(go(text, Backend::Numeric { q: 0.2 })[0].passed);
    }

    #[test]
    fn lets_and_groups() {
        let text = "let D = delta2[a,b]*delta2[b,c];\ncheck 2 * D[a,c] == (delta2[a,c] + D[a,c]);\ncheck D[a,c] == delta2[c,a];";
        let r = go(text, Backend::Exact);
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|c| c.passed));
        assert_eq!((r[0].index, r[1].index, r[1].line), (1, 2, 3));
    }

    #[test]
    fn bad_q_is_rejected() {
        let reg = Registry::new(Signature::Euclid);
        let c = typecheck(&parse("check delta2[a,b] == delta2[b,a];").unwrap(), &reg).unwrap();
        assert!(matches!(
            run(&c, &reg, Backend::Numeric { q: 1.5 }, 1e-10),
            Err(QvtError::Deformation(_))
        ));
    }
}
