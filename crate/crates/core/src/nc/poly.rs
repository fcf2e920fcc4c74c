//! Noncommutative polynomials: finite maps from words to coefficients.

use crate::coeff::Coeff;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// A word is a sequence of generator indices into the alphabet of the
/// ambient rewrite system.
pub type Word = Vec<u16>;

#[derive(Clone, Debug, PartialEq)]
pub struct NcPoly<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> Default for NcPoly<C> {
    fn default() -> Self {
        NcPoly::zero()
    }
}

impl<C: Coeff> NcPoly<C> {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        NcPoly::term(C::one(), Vec::new())
    }

    pub fn constant(c: C) -> Self {
        NcPoly::term(c, Vec::new())
    }

    pub fn term(c: C, w: Word) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn gen(g: u16) -> Self {
        NcPoly::term(C::one(), vec![g])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u16]) -> Option<&C> {
        self.terms.get(w)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Adds `c·w` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &C) {
        for (w, a) in &o.terms {
            self.add_term(w.clone(), c.clone() * a.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), c.clone() * a.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NcPoly<D> {
        let mut out = NcPoly::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), f(a));
        }
        out
    }

    pub fn try_map_coeffs<D: Coeff, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<NcPoly<D>, E> {
        let mut out = NcPoly::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), f(a)?);
        }
        Ok(out)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// Replaces every letter by a polynomial (an algebra homomorphism from
    /// the free algebra).
    pub fn substitute(&self, f: &impl Fn(u16) -> NcPoly<C>) -> NcPoly<C> {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NcPoly::constant(c.clone());
            for &g in w {
                acc = &acc * &f(g);
            }
            out = &out + &acc;
        }
        out
    }
}

impl<C: Coeff> Add for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn add(self, o: &NcPoly<C>) -> NcPoly<C> {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn sub(self, o: &NcPoly<C>) -> NcPoly<C> {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Neg for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn neg(self) -> NcPoly<C> {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }
}

impl<C: Coeff> Mul for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn mul(self, o: &NcPoly<C>) -> NcPoly<C> {
        let mut out = NcPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x.clone() * y.clone());
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for NcPoly<C> {
            type Output = NcPoly<C>;
            fn $m(self, o: NcPoly<C>) -> NcPoly<C> {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Product of a list of polynomials.
pub fn product<C: Coeff>(factors: &[&NcPoly<C>]) -> NcPoly<C> {
    factors.iter().fold(NcPoly::one(), |acc, f| &acc * f)
}

impl<C: Coeff> NcPoly<C> {
    /// Linear antihomomorphic extension of a letter map: words are
    /// reversed, coefficients are kept.
    pub fn anti_substitute(&self, f: &impl Fn(u16) -> NcPoly<C>) -> NcPoly<C> {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NcPoly::constant(c.clone());
            for &g in w.iter().rev() {
                acc = &acc * &f(g);
            }
            out = &out + &acc;
        }
        out
    }
}
