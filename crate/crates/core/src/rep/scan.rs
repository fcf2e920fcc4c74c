//! Residuals of relations on interior states.
//!
//! A word in the generators acts on `|ℓ⟩` as a single weighted shift, so it
//! compiles to a shift vector, an affine exponent of `Q` and a list of
//! `√(1 − Q^{4(n+o)})` factors.  A relation is scanned label `n` by label
//! `n`: for fixed `n` every term is `g · Q^{e·ℓ'}` over the remaining
//! labels `ℓ'`, and terms with equal shift and exponent are merged first.

use super::operator::{GeneratorTable, SparseOperator};
use super::window::{BasisState, BasisWindow, Labels};
use super::RepError;
use crate::nc::NcPoly;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::sync::Arc;

/// One monomial compiled against a generator table.
#[derive(Debug, Clone)]
struct Term {
    coef: Complex64,
    lhs: bool,
    shift: Labels,
    exp: Labels,
    exp0: i64,
    sqrts: Vec<i64>,
    /// Componentwise extremes of the partial shifts, including 0.
    low: Labels,
    high: Labels,
    /// Sum of the shift magnitudes of all letters.
    travel: i64,
}

impl Term {
    fn compile(table: &GeneratorTable, coef: Complex64, word: &[u16], lhs: bool) -> Term {
        let mut t = Term {
            coef,
            lhs,
            shift: [0; 6],
            exp: [0; 6],
            exp0: 0,
            sqrts: Vec::new(),
            low: [0; 6],
            high: [0; 6],
            travel: 0,
        };
        for &g in word.iter().rev() {
            let l = table.letter_at(g);
            let p = t.shift;
            for i in 0..6 {
                t.exp[i] += l.exp[i];
                t.exp0 += l.exp[i] * p[i];
            }
            t.exp0 += l.exp0;
            if let Some(o) = l.sqrt {
                t.sqrts.push(o + p[0]);
            }
            for i in 0..6 {
                t.shift[i] += l.shift[i];
                t.low[i] = t.low[i].min(t.shift[i]);
                t.high[i] = t.high[i].max(t.shift[i]);
                t.travel += l.shift[i].abs();
            }
        }
        t
    }

    /// `coef · Q^{exp0 + exp₀·n} · Π √(…)`, the part depending on `n` only.
    fn n_factor(&self, n: i64, big_q: f64) -> Complex64 {
        if self.sqrts.iter().any(|o| n + o <= 0) {
            return Complex64::new(0.0, 0.0);
        }
        let mut f = big_q.powi((self.exp0 + self.exp[0] * n) as i32);
        for o in &self.sqrts {
            f *= (1.0 - big_q.powi((4 * (n + o)) as i32)).sqrt();
        }
        self.coef * f
    }

    fn value_at(&self, l: &Labels, big_q: f64) -> Complex64 {
        let rest: i64 = (1..6).map(|i| self.exp[i] * l[i]).sum();
        self.n_factor(l[0], big_q) * big_q.powi(rest as i32)
    }
}

/// Largest residual over the interior and where it occurs.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub max: f64,
    pub at: Option<BasisState>,
    pub states: usize,
}

/// `lhs − rhs` compiled for one convention.
#[derive(Debug, Clone)]
pub struct Compiled {
    terms: Vec<Term>,
}

impl Compiled {
    pub fn new(table: &GeneratorTable, lhs: &NcPoly<Complex64>, rhs: &NcPoly<Complex64>) -> Compiled {
        let mut terms: Vec<Term> = lhs.terms().map(|(w, c)| Term::compile(table, *c, w, true)).collect();
        terms.extend(rhs.terms().map(|(w, c)| Term::compile(table, -*c, w, false)));
        Compiled { terms }
    }

    /// Total shift magnitude of the longest monomial.
    pub fn margin(&self) -> i64 {
        self.terms.iter().map(|t| t.travel).max().unwrap_or(0)
    }

    /// States of `w` from which no monomial leaves the window.  Below
    /// `n = 0` there is nothing to truncate (`α` annihilates `n = 0`), so
    /// a window starting at `n = 0` keeps its lower `n` bound.
    pub fn interior(&self, w: &BasisWindow) -> Option<(Labels, Labels)> {
        let (mut lo, mut hi) = (w.lo(), w.hi());
        for t in &self.terms {
            for i in 0..6 {
                if !(i == 0 && w.lo()[0] == 0) {
                    lo[i] = lo[i].max(w.lo()[i] - t.low[i]);
                }
                hi[i] = hi[i].min(w.hi()[i] - t.high[i]);
            }
        }
        (0..6).all(|i| lo[i] <= hi[i]).then_some((lo, hi))
    }

    /// Residual at one state: `‖(L − R)ψ‖ / max(1, ‖Lψ‖, max_t ‖tψ‖)`
    /// with `t` running over single monomials.
    pub fn residual_at(&self, l: &Labels, big_q: f64) -> f64 {
        let mut diff: BTreeMap<Labels, Complex64> = BTreeMap::new();
        let mut lhs: BTreeMap<Labels, Complex64> = BTreeMap::new();
        let mut term: f64 = 0.0;
        for t in &self.terms {
            let v = t.value_at(l, big_q);
            term = term.max(v.norm());
            *diff.entry(t.shift).or_default() += v;
            if t.lhs {
                *lhs.entry(t.shift).or_default() += v;
            }
        }
        let norm = |m: &BTreeMap<Labels, Complex64>| m.values().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        norm(&diff) / norm(&lhs).max(term).max(1.0)
    }

    pub fn residual(&self, w: &BasisWindow, big_q: f64) -> Result<Residual, RepError> {
        let (lo, hi) = self.interior(w).ok_or(RepError::EmptyInterior {
            margin: self.margin(),
            window: w.to_string(),
        })?;
        let shifts: Vec<Labels> = {
            let mut s: Vec<Labels> = self.terms.iter().map(|t| t.shift).collect();
            s.sort();
            s.dedup();
            s
        };
        let mut best = Residual {
            max: 0.0,
            at: None,
            states: 0,
        };
        for n in lo[0]..=hi[0] {
            // (shift index, exponent over m..v) -> (L − R, L, largest term)
            let mut merged: BTreeMap<(usize, [i64; 5]), (Complex64, Complex64, f64)> = BTreeMap::new();
            for t in &self.terms {
                let g = t.n_factor(n, big_q);
                if g == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let sid = shifts.binary_search(&t.shift).expect("shift listed");
                let e = [t.exp[1], t.exp[2], t.exp[3], t.exp[4], t.exp[5]];
                let slot = merged.entry((sid, e)).or_default();
                slot.0 += g;
                if t.lhs {
                    slot.1 += g;
                }
                slot.2 = slot.2.max(g.norm());
            }
            let groups: Vec<_> = merged.into_iter().collect();
            let (emin, emax) = groups.iter().fold((0i64, 0i64), |(a, b), ((_, e), _)| {
                let (mut x, mut y) = (0, 0);
                for i in 0..5 {
                    let (p, q) = (e[i] * lo[i + 1], e[i] * hi[i + 1]);
                    x += p.min(q);
                    y += p.max(q);
                }
                (a.min(x), b.max(y))
            });
            let pow: Vec<f64> = (emin..=emax).map(|e| big_q.powi(e as i32)).collect();
            let mut diff = vec![Complex64::new(0.0, 0.0); shifts.len()];
            let mut lhs = diff.clone();
            let mut l = [n, lo[1], lo[2], lo[3], lo[4], lo[5]];
            loop {
                diff.iter_mut().for_each(|d| *d = Complex64::new(0.0, 0.0));
                lhs.iter_mut().for_each(|d| *d = Complex64::new(0.0, 0.0));
                let mut term: f64 = 1.0;
                for ((sid, e), (d, a, t)) in &groups {
                    let ex = e[0] * l[1] + e[1] * l[2] + e[2] * l[3] + e[3] * l[4] + e[4] * l[5];
                    let p = pow[(ex - emin) as usize];
                    diff[*sid] += d * p;
                    lhs[*sid] += a * p;
                    term = term.max(t * p);
                }
                let dn: f64 = diff.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
                let ln: f64 = lhs.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
                let r = dn / ln.max(term);
                best.states += 1;
                if best.at.is_none() || r > best.max {
                    best.max = r;
                    best.at = Some(BasisState::from_labels(l));
                }
                // odometer over m..v
                let mut i = 5;
                loop {
                    if l[i] < hi[i] {
                        l[i] += 1;
                        break;
                    }
                    l[i] = lo[i];
                    i -= 1;
                    if i == 0 {
                        break;
                    }
                }
                if i == 0 {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// The matrix of `lhs − rhs` restricted to columns where no monomial
    /// leaves the window.
    pub fn materialize(&self, name: &str, w: &Arc<BasisWindow>, big_q: f64) -> Result<SparseOperator, RepError> {
        let mut op = SparseOperator::new(name, w.clone());
        let (lo, hi) = self.interior(w).ok_or(RepError::EmptyInterior {
            margin: self.margin(),
            window: w.to_string(),
        })?;
        for col in 0..w.len() {
            let l = w.labels_at(col);
            if !(0..6).all(|i| lo[i] <= l[i] && l[i] <= hi[i]) {
                continue;
            }
            for t in &self.terms {
                let v = t.value_at(&l, big_q);
                let dst: Labels = std::array::from_fn(|i| l[i] + t.shift[i]);
                if let Some(row) = w.index_of(&dst) {
                    op.add(row, col, v);
                }
            }
        }
        Ok(op)
    }
}
