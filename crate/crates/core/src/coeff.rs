//! Coefficient backends: exact [`Scalar`] and floating [`Complex64`].

use crate::scalar::{Scalar, StarMode};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Arithmetic needed by tensors and noncommutative polynomials.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether zero tests are decisions (exact) or thresholds (numeric).
    const EXACT: bool;

    fn inverse(&self) -> Option<Self>;

    fn conj(&self, mode: StarMode) -> Self;

    /// Size used for residual reports: modulus for numbers, 0/1 for
    /// exact values.
    fn magnitude(&self) -> f64;

    fn from_i64(n: i64) -> Self;
}

impl Coeff for Scalar {
    const EXACT: bool = true;

    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }

    fn conj(&self, mode: StarMode) -> Self {
        self.conjugate(mode)
    }

    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    fn from_i64(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Coeff for Complex64 {
    const EXACT: bool = false;

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }

    /// Complex conjugation.  For `ModulusOneQ` this matches the exact
    /// rule when the evaluation point lies on the unit circle.
    fn conj(&self, _mode: StarMode) -> Self {
        Complex64::conj(self)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

pub(crate) fn is_one<C: Coeff>(c: &C) -> bool {
    *c == C::one()
}
