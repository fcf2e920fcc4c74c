//! Yang–Baxter residuals, Lagrange projectors and the invariant metric.

use super::{einsum, Tensor, TensorError};
use crate::coeff::Coeff;
use crate::scalar::Scalar;
use num_traits::{One, Zero};

/// `R̂₁₂R̂₂₃R̂₁₂ − R̂₂₃R̂₁₂R̂₂₃` as a rank-6 tensor.
pub fn qybe_residual<T: Coeff>(r: &Tensor<T>) -> Tensor<T> {
    let lhs = einsum(&[(r, "ijpq"), (r, "qkrc"), (r, "prab")], "ijkabc").expect("qybe lhs");
    let rhs = einsum(&[(r, "jkpq"), (r, "ipar"), (r, "rqbc")], "ijkabc").expect("qybe rhs");
    lhs.sub(&rhs)
}

/// `Π_i (R̂ − λ_i)` for a rank-4 operator.
pub fn characteristic_residual<T: Coeff>(r: &Tensor<T>, eigenvalues: &[T]) -> Tensor<T> {
    let n = r.extents()[0];
    let id = Tensor::identity_op(n);
    let mut acc = id.clone();
    for l in eigenvalues {
        acc = acc.compose(&r.sub(&id.scale(l)));
    }
    acc
}

/// Spectral projectors `P_λ = Π_{μ≠λ} (R̂ − μ)/(λ − μ)`, in the order of
/// `eigenvalues`.
pub fn eigenprojectors(r: &Tensor<Scalar>, eigenvalues: &[Scalar]) -> Result<Vec<Tensor<Scalar>>, TensorError> {
    for (i, a) in eigenvalues.iter().enumerate() {
        if eigenvalues[..i].contains(a) {
            return Err(TensorError::Degenerate);
        }
    }
    let res = characteristic_residual(r, eigenvalues);
    if !res.is_zero() {
        return Err(TensorError::Characteristic(Box::new(res)));
    }
    let n = r.extents()[0];
    let id = Tensor::identity_op(n);
    Ok(eigenvalues
        .iter()
        .map(|l| {
            let mut p = id.clone();
            for m in eigenvalues.iter().filter(|m| *m != l) {
                let f = (l - m).inv().expect("distinct eigenvalues");
                p = p.compose(&r.sub(&id.scale(m))).scale(&f);
            }
            p
        })
        .collect())
}

/// Rank of a dense row-major matrix by Gaussian elimination.  Entries
/// whose magnitude does not exceed `tol` count as zero (use `0.0` for
/// exact coefficients).
pub fn matrix_rank<T: Coeff>(rows: usize, cols: usize, data: &[T], tol: f64) -> usize {
    let mut m: Vec<Vec<T>> = (0..rows).map(|i| data[i * cols..(i + 1) * cols].to_vec()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let pivot = (rank..rows)
            .filter(|&i| m[i][c].magnitude() > tol)
            .max_by(|&a, &b| m[a][c].magnitude().partial_cmp(&m[b][c].magnitude()).unwrap());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].inverse().expect("nonzero pivot");
        for i in 0..rows {
            if i != rank && m[i][c].magnitude() > tol {
                let f = m[i][c].clone() * inv.clone();
                for j in c..cols {
                    let v = m[rank][j].clone();
                    m[i][j] = m[i][j].clone() - f.clone() * v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Inverse of a square matrix over an exact field, if it exists.
pub fn matrix_inverse(n: usize, data: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut row = data[i * n..(i + 1) * n].to_vec();
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].inv().ok()?;
        for v in m[c].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..2 * n {
                    let v = &f * &m[c][j];
                    m[i][j] = &m[i][j] - &v;
                }
            }
        }
    }
    Some(m.into_iter().flat_map(|r| r[n..].to_vec()).collect())
}

/// Invariant bilinear form read off the rank-1 trace projector.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    /// `C_{kl}`, normalized so that the middle diagonal entry is 1.
    pub lower: Tensor<Scalar>,
    /// `C^{ij}`, the matrix inverse of `lower`.
    pub upper: Tensor<Scalar>,
    /// `λ` with `T̂^{ij}_{kl} = λ C^{ij} C_{kl}`, when such a scalar exists.
    pub transport_scale: Option<Scalar>,
}

pub fn extract_metric(proj_t: &Tensor<Scalar>) -> Result<Metric, TensorError> {
    let n = proj_t.extents()[0];
    let nn = n * n;
    let rank = matrix_rank(nn, nn, proj_t.data(), 0.0);
    if rank != 1 {
        return Err(TensorError::Rank(rank));
    }
    let data = proj_t.data();
    let row = (0..nn)
        .find(|&i| data[i * nn..(i + 1) * nn].iter().any(|x| !x.is_zero()))
        .unwrap();
    let mid = (n / 2) * n + n / 2;
    let norm = data[row * nn + mid].inv().map_err(|_| TensorError::Rank(0))?;
    let lower_data: Vec<Scalar> = data[row * nn..(row + 1) * nn].iter().map(|x| x * &norm).collect();
    let upper_data = matrix_inverse(n, &lower_data).ok_or(TensorError::Rank(0))?;
    let lower = Tensor::new(vec![n, n], lower_data)?;
    let upper = Tensor::new(vec![n, n], upper_data)?;
    let outer = einsum(&[(&upper, "ij"), (&lower, "kl")], "ijkl")?;
    let transport_scale = outer
        .data()
        .iter()
        .zip(data)
        .find(|(o, _)| !o.is_zero())
        .and_then(|(o, t)| t.checked_div(o).ok())
        .filter(|l| outer.scale(l) == *proj_t);
    Ok(Metric {
        lower,
        upper,
        transport_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{constant, Signature};

    #[test]
    fn su2_qybe_and_characteristic() {
        let r = constant("rhat_su2", Signature::Euclid).unwrap();
        assert!(qybe_residual(&r).is_zero());
        assert!(characteristic_residual(&r, &[Scalar::mu(), -Scalar::q_pow(-2)]).is_zero());
    }

    #[test]
    fn su2_projectors_complete() {
        let s = constant("projS", Signature::Euclid).unwrap();
        let a = constant("projA", Signature::Euclid).unwrap();
        assert_eq!(s.add(&a), Tensor::identity_op(2));
        assert!(s.compose(&a).is_zero());
    }

    #[test]
    fn wrong_eigenvalues_are_rejected() {
        let r = constant("rhat_su2", Signature::Euclid).unwrap();
        let e = eigenprojectors(&r, &[Scalar::mu(), Scalar::int(1)]);
        assert!(matches!(e, Err(TensorError::Characteristic(_))));
        assert!(matches!(
            eigenprojectors(&r, &[Scalar::mu(), Scalar::mu()]),
            Err(TensorError::Degenerate)
        ));
    }

    #[test]
    fn rank_of_small_matrices() {
        let m: Vec<Scalar> = [1, 2, 2, 4].iter().map(|&x| Scalar::int(x)).collect();
        assert_eq!(matrix_rank(2, 2, &m, 0.0), 1);
        let inv = matrix_inverse(2, &[Scalar::int(2), Scalar::int(1), Scalar::int(1), Scalar::int(1)]).unwrap();
        assert_eq!(
            inv,
            vec![Scalar::int(1), Scalar::int(-1), Scalar::int(-1), Scalar::int(2)]
        );
    }
}
