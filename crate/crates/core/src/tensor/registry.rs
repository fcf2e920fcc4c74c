//! Named constant tensors.  All slot orders are `[out.., in..]`, zero-based.

use super::{eigenprojectors, einsum, extract_metric, Tensor, TensorError};
use crate::scalar::{Scalar, StarMode};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

/// Real form of the orthogonal group: `euclid` for SO_q(3) (q real),
/// `lorentz` for SO_q(2,1) (|q| = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signature {
    Euclid,
    Lorentz,
}

impl Signature {
    pub fn star_mode(self) -> StarMode {
        match self {
            Signature::Euclid => StarMode::RealPositiveQ,
            Signature::Lorentz => StarMode::ModulusOneQ,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Signature::Euclid => "euclid",
            Signature::Lorentz => "lorentz",
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Signature {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "euclid" => Ok(Signature::Euclid),
            "lorentz" => Ok(Signature::Lorentz),
            _ => Err(format!("unknown signature `{s}` (expected euclid or lorentz)")),
        }
    }
}

pub const REGISTRY_NAMES: &[&str] = &[
    "delta2",
    "delta3",
    "eps_lo",
    "eps_hi",
    "cg",
    "cgT",
    "eta",
    "eta_inv",
    "rhat_su2",
    "rhat_su2_inv",
    "rhat_so",
    "rhat_so_inv",
    "metricC",
    "metricC_inv",
    "projS",
    "projA",
    "projS_so",
    "projA_so",
    "projT",
];

fn delta(n: usize) -> Tensor<Scalar> {
    Tensor::from_fn(&[n, n], |i| if i[0] == i[1] { Scalar::one() } else { Scalar::zero() })
}

fn eps_lo() -> Tensor<Scalar> {
    let mut t = Tensor::zeros(&[2, 2]);
    t.set(&[0, 1], Scalar::q_pow(-1));
    t.set(&[1, 0], -Scalar::big_q());
    t
}

/// `cg[i, μ, ν] = c_i^{μν}`.
fn cg() -> Tensor<Scalar> {
    let mut t = Tensor::zeros(&[3, 2, 2]);
    let inv_s = Scalar::s().inv().unwrap();
    t.set(&[0, 0, 0], Scalar::one());
    t.set(&[1, 0, 1], Scalar::mu() * &inv_s);
    t.set(&[1, 1, 0], inv_s);
    t.set(&[2, 1, 1], Scalar::one());
    t
}

fn eta(sig: Signature, inverse: bool) -> Tensor<Scalar> {
    let mut t = delta(3);
    if sig == Signature::Euclid {
        t.set(&[1, 1], if inverse { -Scalar::i() } else { Scalar::i() });
    }
    t
}

/// `R̂^{μν}_{ρσ} = μ δ^μ_ρ δ^ν_σ + ε^{μν} ε_{ρσ}`.
fn rhat_su2() -> Tensor<Scalar> {
    let lo = eps_lo();
    Tensor::from_fn(&[2, 2, 2, 2], |i| {
        let d = if i[0] == i[2] && i[1] == i[3] {
            Scalar::mu()
        } else {
            Scalar::zero()
        };
        d + (-lo.get(&[i[0], i[1]]).clone()) * lo.get(&[i[2], i[3]]).clone()
    })
}

/// The orthogonal R-matrix as a CG sandwich of four SU-level R-matrices,
/// conjugated by `η ⊗ η`.
pub fn build_rhat_so(sig: Signature) -> Tensor<Scalar> {
    let c = cg();
    let r = rhat_su2();
    // i j | k l : outer 3-indices; a..h, m..t: spinor indices
    let core = einsum(
        &[
            (&c, "imr"),
            (&c, "jsl"),
            (&r, "mnab"),
            (&r, "rsnt"),
            (&r, "tlcd"),
            (&r, "bcef"),
            (&c, "kae"),
            (&c, "Lfd"),
        ],
        "ijkL",
    )
    .expect("sandwich contraction")
    .scale(&Scalar::q_pow(-4));
    let e = eta(sig, false);
    let ei = eta(sig, true);
    einsum(
        &[(&e, "ia"), (&e, "jb"), (&core, "abcd"), (&ei, "ck"), (&ei, "dl")],
        "ijkl",
    )
    .expect("eta conjugation")
}

fn build(sig: Signature) -> HashMap<&'static str, Tensor<Scalar>> {
    let mut m = HashMap::new();
    let lo = eps_lo();
    let su2 = rhat_su2();
    let su2_inv = su2.sub(&Tensor::identity_op(2).scale(&(Scalar::mu() - Scalar::q_pow(-2))));
    let so = build_rhat_so(sig);
    let so_eig = [Scalar::q(), -Scalar::q_pow(-4), Scalar::q_pow(-8)];
    let so_proj = eigenprojectors(&so, &so_eig).expect("orthogonal projectors");
    let su_proj = eigenprojectors(&su2, &[Scalar::mu(), -Scalar::q_pow(-2)]).expect("spinor projectors");
    let metric = extract_metric(&so_proj[2]).expect("metric");
    // R̂⁻¹ from the cubic identity, via the projectors.
    let so_inv = so_proj[0]
        .scale(&Scalar::q_pow(-4))
        .add(&so_proj[1].scale(&-Scalar::q()))
        .add(&so_proj[2].scale(&Scalar::q_pow(8)));
    let c = cg();
    m.insert("delta2", delta(2));
    m.insert("delta3", delta(3));
    m.insert("eps_hi", lo.scale(&-Scalar::one()));
    m.insert("eps_lo", lo);
    m.insert("cgT", c.permute(&[0, 2, 1]));
    m.insert("cg", c);
    m.insert("eta", eta(sig, false));
    m.insert("eta_inv", eta(sig, true));
    m.insert("rhat_su2", su2);
    m.insert("rhat_su2_inv", su2_inv);
    m.insert("rhat_so", so);
    m.insert("rhat_so_inv", so_inv);
    m.insert("metricC", metric.lower);
    m.insert("metricC_inv", metric.upper);
    let mut sp = su_proj.into_iter();
    m.insert("projS", sp.next().unwrap());
    m.insert("projA", sp.next().unwrap());
    let mut op = so_proj.into_iter();
    m.insert("projS_so", op.next().unwrap());
    m.insert("projA_so", op.next().unwrap());
    m.insert("projT", op.next().unwrap());
    m
}

static EUCLID: OnceLock<HashMap<&'static str, Tensor<Scalar>>> = OnceLock::new();
static LORENTZ: OnceLock<HashMap<&'static str, Tensor<Scalar>>> = OnceLock::new();

/// Registry lookup.  Signature-independent entries are identical in both
/// tables.
pub fn constant(name: &str, sig: Signature) -> Result<Tensor<Scalar>, TensorError> {
    let table = match sig {
        Signature::Euclid => EUCLID.get_or_init(|| build(sig)),
        Signature::Lorentz => LORENTZ.get_or_init(|| build(sig)),
    };
    table
        .get(name)
        .cloned()
        .ok_or_else(|| TensorError::Unknown(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_entries() {
        let e = constant("eps_lo", Signature::Euclid).unwrap();
        assert_eq!(*e.get(&[0, 1]), Scalar::q_pow(-1));
        let c = constant("cg", Signature::Euclid).unwrap();
        assert_eq!(*c.get(&[1, 0, 1]), Scalar::mu() / Scalar::s());
        let r = constant("rhat_su2", Signature::Euclid).unwrap();
        assert_eq!(*r.get(&[1, 0, 1, 0]), Scalar::zero());
        assert_eq!(*r.get(&[0, 1, 0, 1]), Scalar::mu() - Scalar::q_pow(-2));
        assert_eq!(*r.get(&[0, 1, 1, 0]), Scalar::one());
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            constant("nope", Signature::Euclid),
            Err(TensorError::Unknown(_))
        ));
    }

    #[test]
    fn classical_limit_is_the_flip() {
        let r = constant("rhat_su2", Signature::Euclid).unwrap().eval(1.0).unwrap();
        for (k, v) in r.data().iter().enumerate() {
            let (i, j, a, b) = (k / 8, (k / 4) % 2, (k / 2) % 2, k % 2);
            let flip = if i == b && j == a { 1.0 } else { 0.0 };
            assert!((v.re - flip).abs() < 1e-14 && v.im.abs() < 1e-14);
        }
    }

    #[test]
    fn inverse_entries_invert() {
        for sig in [Signature::Euclid, Signature::Lorentz] {
            for (a, b, n) in [("rhat_su2", "rhat_su2_inv", 2), ("rhat_so", "rhat_so_inv", 3)] {
                let r = constant(a, sig).unwrap();
                let ri = constant(b, sig).unwrap();
                assert_eq!(r.compose(&ri), Tensor::identity_op(n));
            }
        }
    }

    #[test]
    fn lorentz_entries_have_no_imaginary_unit() {
        let r = constant("rhat_so", Signature::Lorentz).unwrap();
        assert!(r.data().iter().all(|x| x.is_gauss_real()));
        // η contributes i^(#out − #in) on middle indices, which is ±1 on
        // every nonzero entry: the euclid matrix is a sign-twisted copy.
        let e = constant("rhat_so", Signature::Euclid).unwrap();
        assert!(e.data().iter().all(|x| x.is_gauss_real()));
        assert_ne!(e, r);
        assert_eq!(*e.get(&[0, 2, 1, 1]), -r.get(&[0, 2, 1, 1]).clone());
    }
}
