//! Rewrite systems on ordered generators: construction with automatic
//! orientation, normal forms, overlap (diamond-lemma) checks, the
//! *-operation and centrality tests.

use super::poly::{NcPoly, Word};
use crate::coeff::Coeff;
use crate::scalar::StarMode;
use std::cmp::Ordering;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NcError {
    #[error("relation `{0}` cannot be oriented: its leading word has length {1}")]
    Unorientable(String, usize),
    #[error("relation `{0}` is inconsistent with the earlier relations (reduces to a nonzero constant)")]
    Inconsistent(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` has no star partner in this system")]
    NoStarPartner(String),
    #[error("star partners are not an involution at `{0}`")]
    NotInvolution(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("algebra `{0}` is not defined for signature {1}")]
    WrongSignature(String, String),
    #[error("no solution: {0}")]
    NoSolution(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub star_partner: Option<String>,
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule<C> {
    pub lhs: Word,
    pub rhs: NcPoly<C>,
    pub label: String,
}

/// Witness of a non-resolving overlap `abc`.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapFailure<C> {
    pub word: Word,
    pub via_left: NcPoly<C>,
    pub via_right: NcPoly<C>,
}

#[derive(Debug, Clone)]
pub struct RewriteSystem<C> {
    name: String,
    gens: Vec<Generator>,
    index: HashMap<String, u16>,
    star: Vec<Option<u16>>,
    rules: Vec<RewriteRule<C>>,
    lookup: HashMap<(u16, u16), usize>,
    mode: StarMode,
    gamma_const: C,
}

/// Accumulates generators and relations; `build` orients and reduces them.
pub struct SystemBuilder<C> {
    name: String,
    gens: Vec<Generator>,
    index: HashMap<String, u16>,
    relations: Vec<(String, NcPoly<C>, bool)>,
    mode: StarMode,
    gamma_const: C,
}

impl<C: Coeff> SystemBuilder<C> {
    pub fn new(name: &str, mode: StarMode, gamma_const: C) -> Self {
        SystemBuilder {
            name: name.to_string(),
            gens: vec![],
            index: HashMap::new(),
            relations: vec![],
            mode,
            gamma_const,
        }
    }

    /// Declares the next generator in the order.
    pub fn gen(&mut self, name: &str, star_partner: Option<&str>, weight: u32) -> Result<u16, NcError> {
        if self.index.contains_key(name) {
            return Err(NcError::DuplicateGenerator(name.to_string()));
        }
        let i = self.gens.len() as u16;
        self.gens.push(Generator {
            name: name.to_string(),
            star_partner: star_partner.map(str::to_string),
            weight,
        });
        self.index.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn g(&self, name: &str) -> NcPoly<C> {
        NcPoly::gen(
            *self
                .index
                .get(name)
                .unwrap_or_else(|| panic!("unknown generator {name}")),
        )
    }

    pub fn has(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Records `lhs = rhs`.
    pub fn relation(&mut self, label: &str, lhs: NcPoly<C>, rhs: NcPoly<C>) {
        self.relations.push((label.to_string(), &lhs - &rhs, false));
    }

    /// Records `lhs = rhs` together with its star.
    pub fn relation_starred(&mut self, label: &str, lhs: NcPoly<C>, rhs: NcPoly<C>) {
        self.relations.push((label.to_string(), &lhs - &rhs, true));
    }

    pub fn build(self) -> Result<RewriteSystem<C>, NcError> {
        let mut star = vec![None; self.gens.len()];
        for (i, g) in self.gens.iter().enumerate() {
            if let Some(p) = &g.star_partner {
                let j = *self.index.get(p).ok_or_else(|| NcError::UnknownGenerator(p.clone()))?;
                star[i] = Some(j);
            }
        }
        for (i, s) in star.iter().enumerate() {
            if let Some(j) = s {
                if star[*j as usize] != Some(i as u16) {
                    return Err(NcError::NotInvolution(self.gens[i].name.clone()));
                }
            }
        }
        let mut rs = RewriteSystem {
            name: self.name,
            gens: self.gens,
            index: self.index,
            star,
            rules: vec![],
            lookup: HashMap::new(),
            mode: self.mode,
            gamma_const: self.gamma_const,
        };
        let mut queue: Vec<(String, NcPoly<C>)> = Vec::new();
        for (label, p, starred) in self.relations {
            if starred {
                let s = rs.star(&p)?;
                queue.push((label.clone(), p));
                queue.push((format!("{label} (star)"), s));
            } else {
                queue.push((label, p));
            }
        }
        for (label, p) in queue {
            rs.install(&label, p)?;
        }
        rs.interreduce();
        Ok(rs)
    }
}

impl<C: Coeff> RewriteSystem<C> {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn rules(&self) -> &[RewriteRule<C>] {
        &self.rules
    }

    pub fn star_mode(&self) -> StarMode {
        self.mode
    }

    pub fn gamma_const(&self) -> &C {
        &self.gamma_const
    }

    pub fn index_of(&self, name: &str) -> Result<u16, NcError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| NcError::UnknownGenerator(name.to_string()))
    }

    pub fn has(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// The generator as a polynomial; panics on an unknown name.
    pub fn g(&self, name: &str) -> NcPoly<C> {
        NcPoly::gen(self.index_of(name).unwrap_or_else(|e| panic!("{e}")))
    }

    /// Product of generators given by name.
    pub fn word(&self, names: &[&str]) -> NcPoly<C> {
        let w = names
            .iter()
            .map(|n| self.index_of(n).unwrap_or_else(|e| panic!("{e}")))
            .collect();
        NcPoly::term(C::one(), w)
    }

    pub fn word_text(&self, w: &[u16]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&g| self.gens[g as usize].name.as_str())
            .collect::<Vec<_>>()
            .join("·")
    }

    fn weight(&self, w: &[u16]) -> u64 {
        w.iter().map(|&g| self.gens[g as usize].weight as u64).sum()
    }

    /// Weighted degree, then lexicographic in generator order.
    pub fn cmp_words(&self, a: &[u16], b: &[u16]) -> Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b))
    }

    pub fn leading_word(&self, p: &NcPoly<C>) -> Option<Word> {
        p.terms().map(|(w, _)| w).max_by(|a, b| self.cmp_words(a, b)).cloned()
    }

    fn install(&mut self, label: &str, p: NcPoly<C>) -> Result<(), NcError> {
        let p = self.normal_form(&p);
        let Some(lead) = self.leading_word(&p) else {
            return Ok(());
        };
        if lead.len() != 2 {
            if lead.is_empty() {
                return Err(NcError::Inconsistent(label.to_string()));
            }
            return Err(NcError::Unorientable(label.to_string(), lead.len()));
        }
        let c = p.coeff(&lead).unwrap().clone();
        let inv = c.inverse().expect("nonzero leading coefficient");
        let mut rhs = p.scale(&-inv);
        rhs.add_term(lead.clone(), C::one());
        self.lookup.insert((lead[0], lead[1]), self.rules.len());
        self.rules.push(RewriteRule {
            lhs: lead,
            rhs,
            label: label.to_string(),
        });
        Ok(())
    }

    fn interreduce(&mut self) {
        for i in 0..self.rules.len() {
            let rhs = self.rules[i].rhs.clone();
            let r = self.normal_form(&rhs);
            self.rules[i].rhs = r;
        }
    }

    fn rule_at(&self, w: &[u16]) -> Option<(usize, &RewriteRule<C>)> {
        (0..w.len().saturating_sub(1)).find_map(|i| self.lookup.get(&(w[i], w[i + 1])).map(|&k| (i, &self.rules[k])))
    }

    pub fn is_normal(&self, w: &[u16]) -> bool {
        self.rule_at(w).is_none()
    }

    pub fn normal_form(&self, p: &NcPoly<C>) -> NcPoly<C> {
        Reducer::new(self).normal_form(p)
    }

    /// Checks every overlap `abc` of two rule left-hand sides `ab`, `bc`.
    /// With left-hand sides of length two there are no inclusion
    /// ambiguities and all overlaps have degree three, so any
    /// `maxdeg >= 3` gives the complete check.
    pub fn overlap_check(&self, maxdeg: usize) -> Vec<OverlapFailure<C>> {
        assert!(maxdeg >= 3, "overlap check needs maxdeg >= 3");
        let mut red = Reducer::new(self);
        let mut failures = Vec::new();
        for r1 in &self.rules {
            for r2 in &self.rules {
                if r1.lhs[1] != r2.lhs[0] {
                    continue;
                }
                let (a, b, c) = (r1.lhs[0], r1.lhs[1], r2.lhs[1]);
                let left = red.normal_form(&(&r1.rhs * &NcPoly::gen(c)));
                let right = red.normal_form(&(&NcPoly::gen(a) * &r2.rhs));
                if left != right {
                    failures.push(OverlapFailure {
                        word: vec![a, b, c],
                        via_left: left,
                        via_right: right,
                    });
                }
            }
        }
        failures
    }

    /// Antilinear antihomomorphism: reverses words, maps letters to their
    /// star partners and conjugates coefficients.
    pub fn star(&self, p: &NcPoly<C>) -> Result<NcPoly<C>, NcError> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let mut sw = Vec::with_capacity(w.len());
            for &g in w.iter().rev() {
                sw.push(
                    self.star[g as usize].ok_or_else(|| NcError::NoStarPartner(self.gens[g as usize].name.clone()))?,
                );
            }
            out.add_term(sw, c.conj(self.mode));
        }
        Ok(out)
    }

    /// True when every generator has a star partner.
    pub fn is_star_closed(&self) -> bool {
        self.star.iter().all(Option::is_some)
    }

    /// Rules whose star is not a consequence of the rules, with the
    /// nonzero normal-form residual.
    pub fn star_violations(&self) -> Result<Vec<(String, NcPoly<C>)>, NcError> {
        let mut red = Reducer::new(self);
        let mut out = Vec::new();
        for r in &self.rules {
            let rel = &NcPoly::term(C::one(), r.lhs.clone()) - &r.rhs;
            let d = red.normal_form(&self.star(&rel)?);
            if !d.is_zero() {
                out.push((r.label.clone(), d));
            }
        }
        Ok(out)
    }

    /// `Ok` if `p` commutes with every element of `testset` modulo the
    /// rules; otherwise the index of the first failing element and the
    /// nonzero normal form of the commutator.
    pub fn is_central(&self, p: &NcPoly<C>, testset: &[NcPoly<C>]) -> Result<(), (usize, NcPoly<C>)> {
        let mut red = Reducer::new(self);
        for (i, g) in testset.iter().enumerate() {
            let c = red.normal_form(&(&(p * g) - &(g * p)));
            if !c.is_zero() {
                return Err((i, c));
            }
        }
        Ok(())
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> RewriteSystem<D> {
        RewriteSystem {
            name: self.name.clone(),
            gens: self.gens.clone(),
            index: self.index.clone(),
            star: self.star.clone(),
            rules: self
                .rules
                .iter()
                .map(|r| RewriteRule {
                    lhs: r.lhs.clone(),
                    rhs: r.rhs.map_coeffs(&f),
                    label: r.label.clone(),
                })
                .collect(),
            lookup: self.lookup.clone(),
            mode: self.mode,
            gamma_const: f(&self.gamma_const),
        }
    }

    /// Renders a polynomial with generator names.
    pub fn render(&self, p: &NcPoly<C>) -> String
    where
        C: std::fmt::Display,
    {
        if p.is_zero() {
            return "0".into();
        }
        p.terms()
            .map(|(w, c)| format!("({c})·{}", self.word_text(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Normal-form evaluator with a per-instance cache of word normal forms.
pub struct Reducer<'a, C> {
    rs: &'a RewriteSystem<C>,
    cache: HashMap<Word, NcPoly<C>>,
}

impl<'a, C: Coeff> Reducer<'a, C> {
    pub fn new(rs: &'a RewriteSystem<C>) -> Self {
        Reducer {
            rs,
            cache: HashMap::new(),
        }
    }

    pub fn system(&self) -> &'a RewriteSystem<C> {
        self.rs
    }

    pub fn normal_form(&mut self, p: &NcPoly<C>) -> NcPoly<C> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let nf = self.word_nf(w);
            out.add_scaled(&nf, c);
        }
        out
    }

    fn word_nf(&mut self, w: &[u16]) -> NcPoly<C> {
        if w.len() < 2 {
            return NcPoly::term(C::one(), w.to_vec());
        }
        if let Some(v) = self.cache.get(w) {
            return v.clone();
        }
        let result = match self.rs.rule_at(w) {
            None => NcPoly::term(C::one(), w.to_vec()),
            Some((i, rule)) => {
                let mut acc = NcPoly::zero();
                for (u, c) in rule.rhs.terms() {
                    let mut nw = Vec::with_capacity(w.len() + u.len());
                    nw.extend_from_slice(&w[..i]);
                    nw.extend_from_slice(u);
                    nw.extend_from_slice(&w[i + 2..]);
                    let sub = self.word_nf(&nw);
                    acc.add_scaled(&sub, c);
                }
                acc
            }
        };
        self.cache.insert(w.to_vec(), result.clone());
        result
    }
}

/// Finds `c` with `NF(a·b) = c·NF(b·a)`, if such a scalar exists.
pub fn qcommutation_factor<C: Coeff>(rs: &RewriteSystem<C>, a: &NcPoly<C>, b: &NcPoly<C>) -> Option<C> {
    let ab = rs.normal_form(&(a * b));
    let ba = rs.normal_form(&(b * a));
    let (w, x) = ba.terms().next()?;
    let c = ab.coeff(w)?.clone() * x.inverse()?;
    if rs.normal_form(&(&ab - &ba.scale(&c))).is_zero() {
        Some(c)
    } else {
        None
    }
}

/// Solves `target = Σ x_i basis_i` over the coefficient field, comparing
/// coefficients word by word.  Returns the unique solution if the basis
/// is independent on the words involved.
pub fn solve_combination<C: Coeff>(target: &NcPoly<C>, basis: &[NcPoly<C>]) -> Option<Vec<C>> {
    let mut words: Vec<Word> = target.terms().map(|(w, _)| w.clone()).collect();
    for b in basis {
        words.extend(b.terms().map(|(w, _)| w.clone()));
    }
    words.sort();
    words.dedup();
    let n = basis.len();
    let mut rows: Vec<Vec<C>> = words
        .iter()
        .map(|w| {
            let mut r: Vec<C> = basis
                .iter()
                .map(|b| b.coeff(w).cloned().unwrap_or_else(C::zero))
                .collect();
            r.push(target.coeff(w).cloned().unwrap_or_else(C::zero));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            return None;
        };
        rows.swap(row, p);
        let inv = rows[row][col].inverse()?;
        for v in rows[row].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != row && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..=n {
                    let v = rows[row][j].clone();
                    rows[i][j] = rows[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| rows[r][n].clone()).collect())
}
