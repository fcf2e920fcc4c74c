//! Exact and numeric verification of the quantum euclidean groups
//! ISO_q(3) and ISO_q(2,1) through their embedding into extended
//! inhomogeneous SU_√q(2) / SL_q(2,R) algebras.

pub mod check;
pub mod coeff;
pub mod embedding;
pub mod nc;
pub mod rep;
pub mod scalar;
pub mod tensor;

pub use check::CheckOutcome;
pub use coeff::Coeff;
pub use nc::{NcPoly, RewriteSystem};
pub use scalar::{Scalar, StarMode};
pub use tensor::{Signature, Tensor};

/// Tensor with exact coefficients.
pub type ExactTensor = Tensor<Scalar>;
/// Tensor with complex floating coefficients.
pub type NumTensor = Tensor<num_complex::Complex64>;
/// Noncommutative polynomial with exact coefficients.
pub type ExactPoly = NcPoly<Scalar>;
/// Noncommutative polynomial with complex floating coefficients.
pub type NumPoly = NcPoly<num_complex::Complex64>;
