//! The tensor checks of the verification suite.

use super::spectral::matrix_rank;
use super::{characteristic_residual, constant, einsum, extract_metric, qybe_residual, Signature, Tensor};
use crate::check::CheckOutcome;
use crate::scalar::Scalar;
use num_complex::Complex64;
use std::time::Instant;

mod anchor {
    pub const QYBE: &str = "fulfilling the Quantum Yang-Baxter equation";
    pub const CHAR: &str = "projector decomposition R = q S - q^-1 A + q^(1-N) T";
    pub const PROJ: &str = "their projector decomposition making use of the projectors";
    pub const SYM: &str = "decomposition of the symmetric projector";
    pub const ANTI: &str = "decomposed using the q-antisymmetric epsilon";
    pub const TRACE: &str = "T proportional to C^{ij} C_{kl} with the metric C_{ij}";
    pub const REAL: &str = "eta has to be chosen as identity matrix";
}

fn so_tag(sig: Signature) -> &'static str {
    match sig {
        Signature::Euclid => "so3",
        Signature::Lorentz => "so21",
    }
}

fn reg(name: &str, sig: Signature) -> Tensor<Scalar> {
    constant(name, sig).expect("registry entry")
}

fn exact(out: &mut Vec<CheckOutcome>, id: &str, anchor: &str, f: impl FnOnce() -> (usize, usize)) {
    let start = Instant::now();
    let (fails, total) = f();
    out.push(CheckOutcome::exact(id, "tensor", anchor, fails, total, false, start));
}

fn numeric(
    out: &mut Vec<CheckOutcome>,
    id: &str,
    anchor: &str,
    q: f64,
    tol: f64,
    f: impl FnOnce(f64) -> Result<(f64, String), String>,
) {
    let start = Instant::now();
    match f(q.powf(0.25)) {
        Ok((r, detail)) => out.push(CheckOutcome {
            id: id.to_string(),
            module: "tensor",
            anchor: anchor.to_string(),
            passed: r <= tol,
            residual: Some(r),
            detail: Some(detail),
            q: Some(q),
            duration_ms: start.elapsed().as_millis() as u64,
        }),
        Err(e) => out.push(CheckOutcome::error(id, "tensor", anchor, e, Some(q), start)),
    }
}

/// Eigenvalues `q, −q⁻¹, q⁻²` of the orthogonal R-matrix.
pub fn so_eigenvalues() -> [Scalar; 3] {
    [Scalar::q(), -Scalar::q_pow(-4), Scalar::q_pow(-8)]
}

/// Eigenvalues `μ, −μ⁻¹` of the spinor R-matrix.
pub fn su2_eigenvalues() -> [Scalar; 2] {
    [Scalar::mu(), -Scalar::q_pow(-2)]
}

/// Idempotence, mutual orthogonality, completeness and `Σ λ P = R̂`:
/// returns the number of failing identities and the total.
pub fn projector_family_failures(r: &Tensor<Scalar>, projs: &[Tensor<Scalar>], eig: &[Scalar]) -> (usize, usize) {
    let n = r.extents()[0];
    let id = Tensor::identity_op(n);
    let mut fails = 0;
    let mut total = 0;
    let mut sum = Tensor::zeros(r.extents());
    let mut spectral = Tensor::zeros(r.extents());
    for (i, p) in projs.iter().enumerate() {
        for (j, o) in projs.iter().enumerate() {
            let pp = p.compose(o);
            let ok = if i == j { pp == *p } else { pp.is_zero() };
            fails += usize::from(!ok);
            total += 1;
        }
        sum = sum.add(p);
        spectral = spectral.add(&p.scale(&eig[i]));
    }
    fails += usize::from(sum != id) + usize::from(spectral != *r);
    (fails, total + 2)
}

/// Every tensor check for one signature.  Numeric checks run at each of
/// `qvals`.
pub fn suite(sig: Signature, qvals: &[f64]) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let so = so_tag(sig);
    let su2 = reg("rhat_su2", sig);
    let rso = reg("rhat_so", sig);
    exact(&mut out, "tensor.qybe.su2", anchor::QYBE, || {
        (usize::from(!qybe_residual(&su2).is_zero()), 1)
    });
    exact(&mut out, &format!("tensor.qybe.{so}"), anchor::QYBE, || {
        (usize::from(!qybe_residual(&rso).is_zero()), 1)
    });
    exact(&mut out, "tensor.char.su2", anchor::CHAR, || {
        (
            usize::from(!characteristic_residual(&su2, &su2_eigenvalues()).is_zero()),
            1,
        )
    });
    exact(&mut out, &format!("tensor.char.{so}"), anchor::CHAR, || {
        (
            usize::from(!characteristic_residual(&rso, &so_eigenvalues()).is_zero()),
            1,
        )
    });
    exact(&mut out, "tensor.proj.su2", anchor::PROJ, || {
        projector_family_failures(&su2, &[reg("projS", sig), reg("projA", sig)], &su2_eigenvalues())
    });
    exact(&mut out, &format!("tensor.proj.{so}"), anchor::PROJ, || {
        projector_family_failures(
            &rso,
            &[reg("projS_so", sig), reg("projA_so", sig), reg("projT", sig)],
            &so_eigenvalues(),
        )
    });
    exact(&mut out, "tensor.projS.cg", anchor::SYM, || {
        let c = reg("cg", sig);
        let s = einsum(&[(&c, "imn"), (&c, "irs")], "mnrs").expect("cg contraction");
        (usize::from(s != reg("projS", sig)), 1)
    });
    exact(&mut out, "tensor.projA.eps", anchor::ANTI, || {
        let (hi, lo) = (reg("eps_hi", sig), reg("eps_lo", sig));
        let f = -(Scalar::mu() + Scalar::q_pow(-2)).inv().expect("nonzero");
        let a = einsum(&[(&hi, "mn"), (&lo, "rs")], "mnrs").expect("eps pair").scale(&f);
        (usize::from(a != reg("projA", sig)), 1)
    });
    exact(&mut out, &format!("tensor.projT.{so}"), anchor::TRACE, || {
        let t = reg("projT", sig);
        let rank = matrix_rank(9, 9, t.data(), 0.0);
        let transport = extract_metric(&t).map(|m| m.transport_scale.is_some()).unwrap_or(false);
        (usize::from(rank != 1) + usize::from(!transport), 2)
    });
    if sig == Signature::Lorentz {
        exact(&mut out, "tensor.real.so21", anchor::REAL, || {
            let imaginary = rso.data().iter().filter(|x| !x.is_gauss_real()).count();
            (imaginary, rso.data().len())
        });
    }
    let projs = ["projS_so", "projA_so", "projT"];
    for &q in qvals {
        numeric(&mut out, &format!("tensor.mult.{so}"), anchor::CHAR, q, 0.0, |bq| {
            let mut ranks = Vec::new();
            for p in projs {
                let t = reg(p, sig).eval(bq).map_err(|e| e.to_string())?;
                ranks.push(matrix_rank(9, 9, t.data(), 1e-9 * t.max_abs().max(1.0)));
            }
            let off = ranks.iter().zip([5, 3, 1]).map(|(r, e)| r.abs_diff(e)).sum::<usize>();
            Ok((off as f64, format!("ranks {ranks:?}, expected [5, 3, 1]")))
        });
        // Identities of the exact layer evaluated in floating point.
        numeric(
            &mut out,
            &format!("tensor.numeric.{so}"),
            anchor::QYBE,
            q,
            1e-12,
            |bq| {
                let r = rso.eval(bq).map_err(|e| e.to_string())?;
                let s = su2.eval(bq).map_err(|e| e.to_string())?;
                let ev = |xs: &[Scalar]| {
                    xs.iter()
                        .map(|x| x.eval(bq))
                        .collect::<Result<Vec<Complex64>, _>>()
                        .map_err(|e| e.to_string())
                };
                let rel = |t: &Tensor<Complex64>, scale: f64| t.max_abs() / scale.max(1.0);
                let (mr, ms) = (r.max_abs(), s.max_abs());
                let worst = [
                    rel(&qybe_residual(&r), mr.powi(3)),
                    rel(&qybe_residual(&s), ms.powi(3)),
                    rel(
                        &characteristic_residual(&r, &ev(&so_eigenvalues())?),
                        (mr + mr.max(1.0)).powi(3),
                    ),
                    rel(
                        &characteristic_residual(&s, &ev(&su2_eigenvalues())?),
                        (ms + ms.max(1.0)).powi(2),
                    ),
                ]
                .into_iter()
                .fold(0.0, f64::max);
                Ok((
                    worst,
                    "QYBE and characteristic identities, relative to the size of their terms".into(),
                ))
            },
        );
    }
    out
}
