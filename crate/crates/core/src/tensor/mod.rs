//! Small dense tensors over a coefficient backend, with Einstein-style
//! contraction.

mod checks;
mod registry;
mod spectral;

pub use checks::{projector_family_failures, so_eigenvalues, su2_eigenvalues, suite};
pub use registry::{build_rhat_so, constant, Signature, REGISTRY_NAMES};
pub use spectral::{characteristic_residual, eigenprojectors, extract_metric, matrix_rank, qybe_residual, Metric};

use crate::coeff::Coeff;
use crate::scalar::{Scalar, ScalarError};
use num_complex::Complex64;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TensorError {
    #[error("unknown tensor `{0}`")]
    Unknown(String),
    #[error("entry count {got} does not match extents {extents:?}")]
    Shape { extents: Vec<usize>, got: usize },
    #[error("index `{name}` has extent {a} in one slot and {b} in another")]
    ExtentMismatch { name: String, a: usize, b: usize },
    #[error("index `{0}` appears more than twice")]
    TooManyOccurrences(String),
    #[error("free indices {got:?} do not match requested output {want:?}")]
    FreeIndexMismatch { got: Vec<String>, want: Vec<String> },
    #[error("factor has {slots} slots but {names} index names")]
    Arity { slots: usize, names: usize },
    #[error("characteristic identity fails (max residual entry nonzero)")]
    Characteristic(Box<Tensor<Scalar>>),
    #[error("eigenvalues are not distinct")]
    Degenerate,
    #[error("projector has rank {0}, expected 1")]
    Rank(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Upper/lower placement of a slot.  Metadata only; contraction ignores it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Upper,
    Lower,
}

/// Row-major dense tensor.  Indices are zero-based.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    extents: Vec<usize>,
    data: Vec<T>,
    variance: Vec<Variance>,
}

fn strides(extents: &[usize]) -> Vec<usize> {
    let mut s = vec![1; extents.len()];
    for i in (0..extents.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * extents[i + 1];
    }
    s
}

fn unflatten(mut k: usize, extents: &[usize], out: &mut [usize]) {
    for i in (0..extents.len()).rev() {
        out[i] = k % extents[i];
        k /= extents[i];
    }
}

impl<T: Coeff> Tensor<T> {
    pub fn new(extents: Vec<usize>, data: Vec<T>) -> Result<Self, TensorError> {
        let n: usize = extents.iter().product();
        if n != data.len() {
            return Err(TensorError::Shape {
                extents,
                got: data.len(),
            });
        }
        let variance = vec![Variance::Upper; extents.len()];
        Ok(Tensor {
            extents,
            data,
            variance,
        })
    }

    pub fn zeros(extents: &[usize]) -> Self {
        let n = extents.iter().product();
        Tensor {
            extents: extents.to_vec(),
            data: vec![T::zero(); n],
            variance: vec![Variance::Upper; extents.len()],
        }
    }

    /// Rank-0 tensor.
    pub fn scalar(v: T) -> Self {
        Tensor {
            extents: vec![],
            data: vec![v],
            variance: vec![],
        }
    }

    pub fn from_fn(extents: &[usize], mut f: impl FnMut(&[usize]) -> T) -> Self {
        let n: usize = extents.iter().product();
        let mut idx = vec![0; extents.len()];
        let data = (0..n)
            .map(|k| {
                unflatten(k, extents, &mut idx);
                f(&idx)
            })
            .collect();
        Tensor {
            extents: extents.to_vec(),
            data,
            variance: vec![Variance::Upper; extents.len()],
        }
    }

    pub fn with_variance(mut self, v: &[Variance]) -> Self {
        assert_eq!(v.len(), self.extents.len());
        self.variance = v.to_vec();
        self
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn rank(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.extents.len());
        idx.iter().zip(&self.extents).fold(0, |acc, (&i, &e)| {
            assert!(i < e, "index out of range");
            acc * e + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &T {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: T) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Tensor<U> {
        Tensor {
            extents: self.extents.clone(),
            data: self.data.iter().map(f).collect(),
            variance: self.variance.clone(),
        }
    }

    pub fn try_map<U: Coeff, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Tensor<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<_, _>>()?;
        Ok(Tensor {
            extents: self.extents.clone(),
            data,
            variance: self.variance.clone(),
        })
    }

    fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!(self.extents, o.extents, "shape mismatch");
        Tensor {
            extents: self.extents.clone(),
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
            variance: self.variance.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| c.clone() * a.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Largest entry magnitude (for exact tensors: 1 if any entry is
    /// nonzero).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.magnitude()).fold(0.0, f64::max)
    }

    /// Rank-4 identity operator `δ^i_k δ^j_l` on an `n ⊗ n` space.
    pub fn identity_op(n: usize) -> Self {
        Tensor::from_fn(&[n, n, n, n], |i| {
            if i[0] == i[2] && i[1] == i[3] {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    /// Views an even-rank tensor as a square matrix, rows indexed by the
    /// first half of the slots.
    pub fn as_matrix(&self) -> (usize, &[T]) {
        let h = self.rank() / 2;
        let rows: usize = self.extents[..h].iter().product();
        (rows, &self.data)
    }

    /// Operator composition `(A∘B)^{I}_{K} = A^{I}_{J} B^{J}_{K}` for
    /// even-rank tensors with matching halves.
    pub fn compose(&self, o: &Self) -> Self {
        assert_eq!(self.extents, o.extents, "shape mismatch");
        let (n, a) = self.as_matrix();
        let b = &o.data;
        let mut c = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let x = &a[i * n + j];
                if x.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let y = &b[j * n + k];
                    if !y.is_zero() {
                        c[i * n + k] = c[i * n + k].clone() + x.clone() * y.clone();
                    }
                }
            }
        }
        Tensor {
            extents: self.extents.clone(),
            data: c,
            variance: self.variance.clone(),
        }
    }

    /// Entry pairs `(multi-index, value)` of the nonzero entries.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, T)> {
        let mut idx = vec![0; self.rank()];
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| {
                unflatten(k, &self.extents, &mut idx);
                (idx.clone(), v.clone())
            })
            .collect()
    }

    /// Reorders slots: result slot `i` is source slot `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let ext: Vec<usize> = perm.iter().map(|&p| self.extents[p]).collect();
        let mut src = vec![0; self.rank()];
        let out = Tensor::from_fn(&ext, |i| {
            for (k, &p) in perm.iter().enumerate() {
                src[p] = i[k];
            }
            self.get(&src).clone()
        });
        let variance = perm.iter().map(|&p| self.variance[p]).collect();
        Tensor { variance, ..out }
    }
}

impl Tensor<Scalar> {
    /// Numeric image at a real `Q`.
    pub fn eval(&self, big_q: f64) -> Result<Tensor<Complex64>, ScalarError> {
        self.try_map(|a| a.eval(big_q))
    }

    pub fn eval_at(&self, big_q: Complex64) -> Result<Tensor<Complex64>, ScalarError> {
        self.try_map(|a| a.eval_at(big_q))
    }
}

/// One factor of a contraction: a tensor with an index name per slot.
#[derive(Debug, Clone)]
pub struct Factor<'a, T> {
    pub tensor: &'a Tensor<T>,
    pub indices: Vec<String>,
}

/// A product of indexed tensors times a prefactor, reduced over summed
/// index names to the given output order.
#[derive(Debug, Clone)]
pub struct ContractionPlan<'a, T> {
    pub factors: Vec<Factor<'a, T>>,
    pub output: Vec<String>,
    pub prefactor: T,
}

impl<'a, T: Coeff> ContractionPlan<'a, T> {
    pub fn new(output: &[&str]) -> Self {
        ContractionPlan {
            factors: vec![],
            output: output.iter().map(|s| s.to_string()).collect(),
            prefactor: T::one(),
        }
    }

    pub fn factor(mut self, tensor: &'a Tensor<T>, indices: &[&str]) -> Self {
        self.factors.push(Factor {
            tensor,
            indices: indices.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn times(mut self, c: T) -> Self {
        self.prefactor = self.prefactor * c;
        self
    }
}

/// Free indices and extents of a product, validating the summation rule.
pub fn index_structure<T: Coeff>(factors: &[Factor<'_, T>]) -> Result<Vec<(String, usize)>, TensorError> {
    let mut seen: Vec<(String, usize, usize)> = Vec::new();
    for f in factors {
        if f.indices.len() != f.tensor.rank() {
            return Err(TensorError::Arity {
                slots: f.tensor.rank(),
                names: f.indices.len(),
            });
        }
        for (name, &e) in f.indices.iter().zip(f.tensor.extents()) {
            match seen.iter_mut().find(|(n, _, _)| n == name) {
                Some((_, ext, count)) => {
                    if *ext != e {
                        return Err(TensorError::ExtentMismatch {
                            name: name.clone(),
                            a: *ext,
                            b: e,
                        });
                    }
                    *count += 1;
                    if *count > 2 {
                        return Err(TensorError::TooManyOccurrences(name.clone()));
                    }
                }
                None => seen.push((name.clone(), e, 1)),
            }
        }
    }
    Ok(seen
        .into_iter()
        .filter(|(_, _, c)| *c == 1)
        .map(|(n, e, _)| (n, e))
        .collect())
}

struct Work<T> {
    t: Tensor<T>,
    labels: Vec<String>,
}

/// Sums out labels repeated inside a single factor.
fn self_trace<T: Coeff>(t: &Tensor<T>, labels: &[String]) -> Work<T> {
    let mut keep: Vec<usize> = Vec::new();
    let mut out_labels: Vec<String> = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        if labels.iter().filter(|m| *m == l).count() == 1 {
            keep.push(i);
            out_labels.push(l.clone());
        }
    }
    if keep.len() == labels.len() {
        return Work {
            t: t.clone(),
            labels: labels.to_vec(),
        };
    }
    let ext: Vec<usize> = keep.iter().map(|&k| t.extents[k]).collect();
    let mut out: Tensor<T> = Tensor::zeros(&ext);
    for (idx, v) in t.nonzero() {
        let diag = labels
            .iter()
            .enumerate()
            .all(|(i, l)| labels.iter().enumerate().all(|(j, m)| l != m || idx[i] == idx[j]));
        if diag {
            let o: Vec<usize> = keep.iter().map(|&k| idx[k]).collect();
            let cur = out.get(&o).clone();
            out.set(&o, cur + v);
        }
    }
    Work {
        t: out,
        labels: out_labels,
    }
}

/// Contracts two factors over their shared labels, using the sparsity of
/// both operands.
fn contract_pair<T: Coeff>(a: &Work<T>, b: &Work<T>) -> Work<T> {
    let shared: Vec<&String> = a.labels.iter().filter(|l| b.labels.contains(l)).collect();
    let a_keep: Vec<usize> = (0..a.labels.len())
        .filter(|&i| !shared.contains(&&a.labels[i]))
        .collect();
    let b_keep: Vec<usize> = (0..b.labels.len())
        .filter(|&i| !shared.contains(&&b.labels[i]))
        .collect();
    let a_sh: Vec<usize> = shared
        .iter()
        .map(|l| a.labels.iter().position(|m| m == *l).unwrap())
        .collect();
    let b_sh: Vec<usize> = shared
        .iter()
        .map(|l| b.labels.iter().position(|m| m == *l).unwrap())
        .collect();

    let mut labels: Vec<String> = a_keep.iter().map(|&i| a.labels[i].clone()).collect();
    labels.extend(b_keep.iter().map(|&i| b.labels[i].clone()));
    let mut ext: Vec<usize> = a_keep.iter().map(|&i| a.t.extents[i]).collect();
    ext.extend(b_keep.iter().map(|&i| b.t.extents[i]));
    let st = strides(&ext);

    let mut groups: HashMap<Vec<usize>, Vec<(usize, T)>> = HashMap::new();
    for (idx, v) in b.t.nonzero() {
        let key: Vec<usize> = b_sh.iter().map(|&k| idx[k]).collect();
        let off: usize = b_keep
            .iter()
            .enumerate()
            .map(|(j, &k)| idx[k] * st[a_keep.len() + j])
            .sum();
        groups.entry(key).or_default().push((off, v));
    }
    let n: usize = ext.iter().product();
    let mut data = vec![T::zero(); n];
    for (idx, v) in a.t.nonzero() {
        let key: Vec<usize> = a_sh.iter().map(|&k| idx[k]).collect();
        if let Some(list) = groups.get(&key) {
            let base: usize = a_keep.iter().enumerate().map(|(j, &k)| idx[k] * st[j]).sum();
            for (off, w) in list {
                let o = base + off;
                data[o] = data[o].clone() + v.clone() * w.clone();
            }
        }
    }
    let variance = vec![Variance::Upper; ext.len()];
    Work {
        t: Tensor {
            extents: ext,
            data,
            variance,
        },
        labels,
    }
}

/// Evaluates a contraction plan.  The pairing order is greedy (smallest
/// intermediate first); with exact coefficients the result does not
/// depend on it.
pub fn contract<T: Coeff>(plan: &ContractionPlan<'_, T>) -> Result<Tensor<T>, TensorError> {
    let free = index_structure(&plan.factors)?;
    let mut got: Vec<String> = free.iter().map(|(n, _)| n.clone()).collect();
    let mut want = plan.output.clone();
    got.sort();
    want.sort();
    if got != want {
        return Err(TensorError::FreeIndexMismatch { got, want });
    }
    if plan.factors.is_empty() {
        return Ok(Tensor::scalar(plan.prefactor.clone()));
    }
    let mut work: Vec<Work<T>> = plan.factors.iter().map(|f| self_trace(f.tensor, &f.indices)).collect();
    while work.len() > 1 {
        let mut best = (usize::MAX, 0, 1);
        for i in 0..work.len() {
            for j in i + 1..work.len() {
                let size: usize = work[i]
                    .labels
                    .iter()
                    .zip(&work[i].t.extents)
                    .filter(|(l, _)| !work[j].labels.contains(l))
                    .map(|(_, e)| *e)
                    .chain(
                        work[j]
                            .labels
                            .iter()
                            .zip(&work[j].t.extents)
                            .filter(|(l, _)| !work[i].labels.contains(l))
                            .map(|(_, e)| *e),
                    )
                    .product();
                let connected = work[i].labels.iter().any(|l| work[j].labels.contains(l));
                let cost = if connected { size } else { size.saturating_mul(1 << 20) };
                if cost < best.0 {
                    best = (cost, i, j);
                }
            }
        }
        let (_, i, j) = best;
        let b = work.remove(j);
        let a = work.remove(i);
        work.push(contract_pair(&a, &b));
    }
    let w = work.pop().unwrap();
    let perm: Vec<usize> = plan
        .output
        .iter()
        .map(|o| w.labels.iter().position(|l| l == o).unwrap())
        .collect();
    let out = w.t.permute(&perm);
    Ok(if crate::coeff::is_one(&plan.prefactor) {
        out
    } else {
        out.scale(&plan.prefactor)
    })
}

/// Shorthand: `einsum(&[(&a, "ij"), (&b, "jk")], "ik")` with one-letter
/// index names.
pub fn einsum<T: Coeff>(factors: &[(&Tensor<T>, &str)], output: &str) -> Result<Tensor<T>, TensorError> {
    let names = |s: &str| s.chars().map(|c| c.to_string()).collect::<Vec<_>>();
    let plan = ContractionPlan {
        factors: factors
            .iter()
            .map(|(t, ix)| Factor {
                tensor: *t,
                indices: names(ix),
            })
            .collect(),
        output: names(output),
        prefactor: T::one(),
    };
    contract(&plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_tensor(ext: &[usize], v: &[i64]) -> Tensor<Scalar> {
        Tensor::new(ext.to_vec(), v.iter().map(|&x| Scalar::int(x)).collect()).unwrap()
    }

    #[test]
    fn matrix_product() {
        let a = int_tensor(&[2, 3], &[1, 2, 3, 4, 5, 6]);
        let b = int_tensor(&[3, 2], &[1, 0, 0, 1, 1, 1]);
        let c = einsum(&[(&a, "ij"), (&b, "jk")], "ik").unwrap();
        assert_eq!(c, int_tensor(&[2, 2], &[4, 5, 10, 11]));
    }

    #[test]
    fn transpose_and_trace() {
        let a = int_tensor(&[2, 2], &[1, 2, 3, 4]);
        assert_eq!(einsum(&[(&a, "ij")], "ji").unwrap(), int_tensor(&[2, 2], &[1, 3, 2, 4]));
        assert_eq!(einsum(&[(&a, "ii")], "").unwrap(), Tensor::scalar(Scalar::int(5)));
    }

    #[test]
    fn outer_product() {
        let a = int_tensor(&[2], &[1, 2]);
        let b = int_tensor(&[2], &[3, 5]);
        assert_eq!(
            einsum(&[(&a, "i"), (&b, "j")], "ij").unwrap(),
            int_tensor(&[2, 2], &[3, 5, 6, 10])
        );
    }

    #[test]
    fn errors() {
        let a = int_tensor(&[2, 3], &[0; 6]);
        assert!(matches!(
            einsum(&[(&a, "ij"), (&a, "jk")], "ik"),
            Err(TensorError::ExtentMismatch { .. })
        ));
        assert!(matches!(
            einsum(&[(&a, "ij")], "i"),
            Err(TensorError::FreeIndexMismatch { .. })
        ));
        let d = int_tensor(&[2, 2], &[1, 0, 0, 1]);
        assert!(matches!(
            einsum(&[(&d, "ij"), (&d, "jk"), (&d, "jl")], "ikl"),
            Err(TensorError::TooManyOccurrences(_))
        ));
    }

    #[test]
    fn compose_matches_einsum() {
        let r = int_tensor(&[2, 2, 2, 2], &(0..16).map(|x| x * x - 3).collect::<Vec<_>>());
        let e = einsum(&[(&r, "ijmn"), (&r, "mnkl")], "ijkl").unwrap();
        assert_eq!(r.compose(&r), e);
    }
}
