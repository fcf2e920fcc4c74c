//! Dense univariate polynomials in `Q` over the Gaussian rationals.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// A Gaussian rational `a + b·i` with `a, b ∈ ℚ`.
pub type GaussRat = Complex<BigRational>;

pub(crate) fn gr_int(n: i64) -> GaussRat {
    Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
}

pub(crate) fn gr_i() -> GaussRat {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub(crate) fn gr_inv(a: &GaussRat) -> GaussRat {
    let n = &a.re * &a.re + &a.im * &a.im;
    Complex::new(&a.re / &n, -(&a.im / &n))
}

pub(crate) fn gr_conj(a: &GaussRat) -> GaussRat {
    Complex::new(a.re.clone(), -a.im.clone())
}

pub(crate) fn gr_to_c64(a: &GaussRat) -> Complex64 {
    Complex64::new(rat_to_f64(&a.re), rat_to_f64(&a.im))
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a ratio of truncated integers for very large parts.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Coefficients are stored lowest degree first with no trailing zeros,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(gr_int(1))
    }

    pub fn constant(a: GaussRat) -> Self {
        Poly::from_coeffs(vec![a])
    }

    /// `a·Q^k`.
    pub fn monomial(a: GaussRat, k: usize) -> Self {
        let mut c = vec![GaussRat::zero(); k + 1];
        c[k] = a;
        Poly::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<GaussRat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&GaussRat> {
        self.c.last()
    }

    /// Exponent of the lowest nonzero term (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    /// True for `a·Q^k` (including constants).
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.valuation() == self.degree()
    }

    /// Divides by `Q^k`; the caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c[k..].to_vec(),
        }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![GaussRat::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(c)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            c: self.c.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![GaussRat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + a * b;
                }
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, a: &GaussRat) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|x| x * a).collect(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let inv_lead = gr_inv(d.lead().unwrap());
        let mut r = self.c.clone();
        let dd = d.degree();
        let mut q = vec![GaussRat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &inv_lead;
            if t.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = &r[k + j] - &t * b;
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Divides exactly, panicking if a remainder is left.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        if d.is_one() {
            return self.clone();
        }
        if d.is_monomial() {
            let k = d.valuation();
            let inv = gr_inv(d.lead().unwrap());
            return self.shift_down(k).scale(&inv);
        }
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&gr_inv(l)),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.is_monomial() || o.is_monomial() {
            return Poly::monomial(gr_int(1), self.valuation().min(o.valuation()));
        }
        // Pull out the common power of Q first; it keeps the remainder
        // sequence short for the Laurent-type inputs that dominate here.
        let k = self.valuation().min(o.valuation());
        let mut a = self.shift_down(self.valuation()).monic();
        let mut b = o.shift_down(o.valuation()).monic();
        if a.c.len() < b.c.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic().shift_up(k)
    }

    pub fn conj_coeffs(&self) -> Poly {
        Poly {
            c: self.c.iter().map(gr_conj).collect(),
        }
    }

    /// `Q^k · p(1/Q)`, requires `k >= degree`.
    pub fn reflect(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        assert!(k >= self.degree());
        let mut c = vec![GaussRat::zero(); k + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[k - i] = a.clone();
        }
        Poly::from_coeffs(c)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in self.c.iter().rev() {
            acc = acc * x + gr_to_c64(a);
        }
        acc
    }

    pub fn has_imaginary(&self) -> bool {
        self.c.iter().any(|a| !a.im.is_zero())
    }
}

pub(crate) fn fmt_gauss(a: &GaussRat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let re = !a.re.is_zero();
    let im = !a.im.is_zero();
    match (re, im) {
        (_, false) => write!(f, "{}", a.re),
        (false, true) if a.im.is_one() => write!(f, "I"),
        (false, true) if (-a.im.clone()).is_one() => write!(f, "-I"),
        (false, true) => write!(f, "{}*I", a.im),
        (true, true) => {
            if a.im.is_negative() {
                write!(f, "({} - {}*I)", a.re, -a.im.clone())
            } else {
                write!(f, "({} + {}*I)", a.re, a.im)
            }
        }
    }
}

impl fmt::Display for Poly {
    /// Renders highest degree first, e.g. `Q^4 + 2*I*Q + 1`, parseable by
    /// the scalar parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg_real = a.im.is_zero() && a.re.is_negative();
            let shown = if neg_real { -a.clone() } else { a.clone() };
            if first {
                if neg_real {
                    write!(f, "-")?;
                }
            } else if neg_real {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = shown.is_one();
            if k == 0 || !unit {
                fmt_gauss(&shown, f)?;
            }
            if k > 0 {
                if !unit {
                    write!(f, "*")?;
                }
                write!(f, "Q")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        Poly::from_coeffs(v.iter().map(|&x| gr_int(x)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (Q^2 - 1)(Q + 2) and (Q^2 - 1)(Q - 3)
        let f = p(&[-1, 0, 1]);
        let a = f.mul(&p(&[2, 1]));
        let b = f.mul(&p(&[-3, 1]));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn gcd_keeps_common_power_of_q() {
        let a = p(&[0, 0, 1, 1]);
        let b = p(&[0, 0, 0, 1, -1]);
        assert_eq!(a.gcd(&b), p(&[0, 0, 1]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[3, -2, 0, 5, 1]);
        let d = p(&[1, 1, 2]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn reflect_substitutes_inverse() {
        // Q^3 · (1 + 2Q) at 1/Q = Q^3 + 2Q^2
        assert_eq!(p(&[1, 2]).reflect(3), p(&[0, 0, 2, 1]));
    }

    #[test]
    fn display_orders_by_degree() {
        assert_eq!(p(&[1, 0, -2, 0, 1]).to_string(), "Q^4 - 2*Q^2 + 1");
        let c = Poly::monomial(Complex::new(BigRational::zero(), BigRational::one()), 1);
        assert_eq!(c.to_string(), "I*Q");
    }
}
