//! A small language for tensor-contraction identities over the registry
//! constants of `isoq`.
//!
//! ```text
//! # projector decomposition
//! let S = cg[i,m,n]*cgT[i,r,si];
//! check projS[m,n,r,si] == S[m,n,r,si];
//! check eps_hi[a,b]*eps_lo[a,b] == -(mu + mu^-1);
//! ```
//!
//! An index occurring twice in a term is summed, once it is free.  A
//! `let` binding is a tensor whose slots are its free indices in order of
//! first appearance.

pub mod ast;
pub mod eval;
pub mod parse;
pub mod typecheck;

pub use ast::Script;
pub use eval::{residuals_exact, residuals_numeric, run, Backend, CheckResult, Registry, Residual};
pub use parse::parse;
pub use typecheck::{typecheck, Checked};

use isoq::tensor::TensorError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QvtError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: index `{name}` appears three or more times in one term")]
    RepeatedIndex { name: String, line: usize, col: usize },
    #[error("{line}:{col}: unknown tensor `{name}`")]
    UnknownTensor { name: String, line: usize, col: usize },
    #[error("{line}:{col}: `{name}` has {slots} slots, {given} indices given")]
    Arity {
        name: String,
        slots: usize,
        given: usize,
        line: usize,
        col: usize,
    },
    #[error("{line}:{col}: index `{index}` has different extents in {first} and {second}")]
    ExtentMismatch {
        index: String,
        first: String,
        second: String,
        line: usize,
        col: usize,
    },
    #[error("{line}:{col}: free index mismatch: {msg}")]
    FreeIndexMismatch { msg: String, line: usize, col: usize },
    #[error("{line}:{col}: `{name}` is already bound")]
    Duplicate { name: String, line: usize, col: usize },
    #[error("scalar pole at q = {q}: {msg}")]
    Pole { q: f64, msg: String },
    #[error("q = {0} is outside (0, 1)")]
    Deformation(f64),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Parses and typechecks a script against the registry.
pub fn load(text: &str, reg: &Registry) -> Result<Checked, QvtError> {
    typecheck(&parse(text)?, reg)
}
