//! The exact coefficient field ℚ(i)(Q)[s]/(s² − (1+Q⁴)).
//!
//! `Q` is the fourth root of the deformation parameter (`q = Q⁴`,
//! `μ = Q²`) and `s = √(1+q)`.

mod parse;
mod poly;

pub use parse::{parse_scalar, ScalarParser};
pub use poly::{GaussRat, Poly};

use num_complex::Complex64;
use num_traits::{One, Zero};
use poly::{gr_i, gr_int};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at Q = {0}")]
    Pole(Complex64),
    #[error("scalar syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// Conjugation convention of the *-structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarMode {
    /// `q` real positive: `i ↦ −i`, `Q ↦ Q`, `s ↦ s`.
    RealPositiveQ,
    /// `|q| = 1`: `i ↦ −i`, `Q ↦ Q⁻¹`, `s ↦ s/Q²`.
    ModulusOneQ,
}

/// A rational function in `Q` with monic, coprime denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

/// Field element `(p + r·s)/d`.
///
/// Canonical form: `d` monic, `gcd(p, r, d) = 1`, zero is `(0 + 0·s)/1`.
/// Structural equality is therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    p: Poly,
    r: Poly,
    d: Poly,
}

fn one_plus_q4() -> Poly {
    Poly::from_coeffs(vec![gr_int(1), Zero::zero(), Zero::zero(), Zero::zero(), gr_int(1)])
}

impl Scalar {
    fn raw(p: Poly, r: Poly, d: Poly) -> Scalar {
        debug_assert!(!d.is_zero());
        if p.is_zero() && r.is_zero() {
            return Scalar::zero();
        }
        let g = if d.is_one() { Poly::one() } else { p.gcd(&r).gcd(&d) };
        let (mut p, mut r, mut d) = if g.is_one() {
            (p, r, d)
        } else {
            (p.div_exact(&g), r.div_exact(&g), d.div_exact(&g))
        };
        if let Some(l) = d.lead() {
            if !l.is_one() {
                let inv = poly::gr_inv(l);
                p = p.scale(&inv);
                r = r.scale(&inv);
                d = d.scale(&inv);
            }
        }
        Scalar { p, r, d }
    }

    /// `(p + r·s)/d`; panics if `d` is zero.
    pub fn from_parts(p: Poly, r: Poly, d: Poly) -> Scalar {
        assert!(!d.is_zero(), "zero denominator");
        Scalar::raw(p, r, d)
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar::raw(p, Poly::zero(), Poly::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::from_poly(Poly::constant(gr_int(n)))
    }

    pub fn gauss(a: GaussRat) -> Scalar {
        Scalar::from_poly(Poly::constant(a))
    }

    /// `n/m` as a rational constant.
    pub fn ratio(n: i64, m: i64) -> Scalar {
        Scalar::int(n) / Scalar::int(m)
    }

    /// The imaginary unit.
    pub fn i() -> Scalar {
        Scalar::from_poly(Poly::constant(gr_i()))
    }

    /// `Q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Scalar {
        let m = Poly::monomial(gr_int(1), k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar::from_poly(m)
        } else {
            Scalar::raw(Poly::one(), Poly::zero(), m)
        }
    }

    /// The variable `Q`.
    pub fn big_q() -> Scalar {
        Scalar::q_pow(1)
    }

    /// `q = Q⁴`.
    pub fn q() -> Scalar {
        Scalar::q_pow(4)
    }

    /// `μ = Q²`.
    pub fn mu() -> Scalar {
        Scalar::q_pow(2)
    }

    /// `s = √(1+Q⁴)`.
    pub fn s() -> Scalar {
        Scalar::raw(Poly::zero(), Poly::one(), Poly::one())
    }

    pub fn parts(&self) -> (&Poly, &Poly, &Poly) {
        (&self.p, &self.r, &self.d)
    }

    /// Rational-function coordinate `a` in `a + b·s`.
    pub fn a(&self) -> RatFunc {
        RatFunc::new(self.p.clone(), self.d.clone())
    }

    /// Rational-function coordinate `b` in `a + b·s`.
    pub fn b(&self) -> RatFunc {
        RatFunc::new(self.r.clone(), self.d.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.r.is_zero()
    }

    pub fn has_s(&self) -> bool {
        !self.r.is_zero()
    }

    /// True when no coefficient carries an imaginary part.
    pub fn is_gauss_real(&self) -> bool {
        !(self.p.has_imaginary() || self.r.has_imaginary() || self.d.has_imaginary())
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // 1/(p + r s) = (p − r s)/(p² − r²(1+Q⁴))
        let norm = self.p.mul(&self.p).sub(&self.r.mul(&self.r).mul(&one_plus_q4()));
        Ok(Scalar::raw(self.d.mul(&self.p), self.d.mul(&self.r).neg(), norm))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: i64) -> Scalar {
        let base = if k < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = Scalar::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    pub fn conjugate(&self, mode: StarMode) -> Scalar {
        match mode {
            StarMode::RealPositiveQ => Scalar::raw(self.p.conj_coeffs(), self.r.conj_coeffs(), self.d.conj_coeffs()),
            StarMode::ModulusOneQ => {
                // Multiply numerator and denominator by Q^k with k large
                // enough that every reflected part stays polynomial.
                let k = self.p.degree().max(self.r.degree() + 2).max(self.d.degree());
                let p = self.p.conj_coeffs().reflect(k);
                let r = if self.r.is_zero() {
                    Poly::zero()
                } else {
                    self.r.conj_coeffs().reflect(k - 2)
                };
                let d = self.d.conj_coeffs().reflect(k);
                Scalar::raw(p, r, d)
            }
        }
    }

    /// Evaluates at a complex point `Q`, with `s` the principal root of
    /// `1 + Q⁴` (positive for real `Q`).
    pub fn eval_at(&self, big_q: Complex64) -> Result<Complex64, ScalarError> {
        let d = self.d.eval(big_q);
        if d.norm() < 1e-300 || !d.is_finite() {
            return Err(ScalarError::Pole(big_q));
        }
        let s = (Complex64::new(1.0, 0.0) + big_q.powi(4)).sqrt();
        Ok((self.p.eval(big_q) + self.r.eval(big_q) * s) / d)
    }

    /// Evaluates at a real `Q`.
    pub fn eval(&self, big_q: f64) -> Result<Complex64, ScalarError> {
        self.eval_at(Complex64::new(big_q, 0.0))
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_exact(&g), den.div_exact(&g));
        let inv = poly::gr_inv(den.lead().unwrap());
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar {
            p: Poly::zero(),
            r: Poly::zero(),
            d: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar {
            p: Poly::one(),
            r: Poly::zero(),
            d: Poly::one(),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.d == o.d {
            return Scalar::raw(self.p.add(&o.p), self.r.add(&o.r), self.d.clone());
        }
        Scalar::raw(
            self.p.mul(&o.d).add(&o.p.mul(&self.d)),
            self.r.mul(&o.d).add(&o.r.mul(&self.d)),
            self.d.mul(&o.d),
        )
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        let mut p = self.p.mul(&o.p);
        if !self.r.is_zero() && !o.r.is_zero() {
            p = p.add(&self.r.mul(&o.r).mul(&one_plus_q4()));
        }
        let r = self.p.mul(&o.r).add(&self.r.mul(&o.p));
        Scalar::raw(p, r, self.d.mul(&o.d))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            p: self.p.neg(),
            r: self.r.neg(),
            d: self.d.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Div for Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, o: Scalar) -> Scalar {
        self.checked_div(&o).expect("division by zero")
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero")
    }
}

impl fmt::Display for Scalar {
    /// Canonical text; parses back to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.p.is_zero(), self.r.is_zero()) {
            (true, true) => return write!(f, "0"),
            (false, true) => self.p.to_string(),
            (true, false) => format!("({})*s", self.r),
            (false, false) => format!("{} + ({})*s", self.p, self.r),
        };
        if self.d.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", self.d)
        }
    }
}

impl std::str::FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(t: &str) -> Result<Scalar, ScalarError> {
        parse_scalar(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_squared_is_one_plus_q4() {
        assert_eq!(Scalar::s() * Scalar::s(), Scalar::int(1) + Scalar::q());
    }

    #[test]
    fn mu_squared_is_q() {
        assert_eq!(Scalar::mu() * Scalar::mu(), Scalar::q());
    }

    #[test]
    fn inverse_s_squared() {
        let is = Scalar::s().inv().unwrap();
        let expect = (Scalar::int(1) + Scalar::q()).inv().unwrap();
        assert_eq!(&is * &is, expect);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            Scalar::int(3).checked_div(&Scalar::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn conjugation_modes() {
        assert_eq!(Scalar::i().conjugate(StarMode::RealPositiveQ), -Scalar::i());
        assert_eq!(Scalar::big_q().conjugate(StarMode::ModulusOneQ), Scalar::q_pow(-1));
        let x = Scalar::q_pow(3) * Scalar::s();
        let once = x.conjugate(StarMode::ModulusOneQ);
        assert_eq!(once, Scalar::q_pow(-5) * Scalar::s());
        assert_eq!(once.conjugate(StarMode::ModulusOneQ), x);
    }

    #[test]
    fn numeric_evaluation() {
        assert!((Scalar::q().eval(0.5).unwrap().re - 0.0625).abs() < 1e-15);
        assert!((Scalar::s().eval(1.0).unwrap().re - 2f64.sqrt()).abs() < 1e-15);
        let z = (Scalar::i() * Scalar::big_q()).eval(0.5).unwrap();
        assert!((z - Complex64::new(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn pole_is_reported() {
        let x = (Scalar::big_q() - Scalar::int(1)).inv().unwrap();
        assert!(matches!(x.eval(1.0), Err(ScalarError::Pole(_))));
    }

    #[test]
    fn canonical_denominator_is_monic_and_reduced() {
        let x = (Scalar::q() - Scalar::int(1)) / (Scalar::int(2) * Scalar::mu() - Scalar::int(2));
        assert_eq!(x, (Scalar::mu() + Scalar::int(1)) * Scalar::ratio(1, 2));
        assert!(x.parts().2.is_one());
    }

    #[test]
    fn accessors_split_the_s_part() {
        let x = Scalar::big_q() + Scalar::s() / Scalar::mu();
        assert_eq!(Scalar::from_poly(x.a().num.clone()), Scalar::big_q());
        assert!(x.b().den.is_monomial());
        assert_eq!(x.b().den.degree(), 2);
    }
}
