//! The embeddings ISO_q(3) ↪ ISU^ex_√q(2) and ISO_q(2,1) ↪ ISL^ex_q(2,R):
//! the vector-representation matrix and coordinates built from spinor
//! bilinears, and exact checks of every defining relation.

use crate::check::CheckOutcome;
use crate::coeff::Coeff;
use crate::nc::algebras::{algebra, conjugates, m_poly, scaling, scaling_variant};
use crate::nc::{NcError, NcPoly, Reducer, RewriteSystem};
use crate::scalar::Scalar;
use crate::tensor::{constant, Signature, Tensor};
use num_traits::One;
use std::time::Instant;

type P = NcPoly<Scalar>;
type Sys = RewriteSystem<Scalar>;

/// A square matrix of algebra elements.
pub type MatrixNC = Vec<Vec<P>>;

fn reg(name: &str, sig: Signature) -> Tensor<Scalar> {
    constant(name, sig).expect("registry constant")
}

/// Diagonal of `η`.
fn eta_diag(sig: Signature) -> [Scalar; 3] {
    let e = reg("eta", sig);
    [e.get(&[0, 0]).clone(), e.get(&[1, 1]).clone(), e.get(&[2, 2]).clone()]
}

/// The SU (resp. SL) matrix `m` over the generators of `rs`.
pub fn m_matrix(rs: &Sys, sig: Signature) -> MatrixNC {
    let g = |n: &str| rs.g(n);
    (0..2)
        .map(|j| (0..2).map(|k| m_poly(sig, &g, j, k)).collect())
        .collect()
}

/// `M^i_j = η_i c_i^{μν} m^μ_ρ m^ν_σ c_j^{ρσ} η_j⁻¹`.
pub fn embedded_m(rs: &Sys, sig: Signature) -> MatrixNC {
    embed_matrix(&m_matrix(rs, sig), sig)
}

/// `η c m m c η⁻¹` for an arbitrary 2×2 matrix.
pub fn embed_matrix(m: &MatrixNC, sig: Signature) -> MatrixNC {
    let c = reg("cg", sig);
    let eta = eta_diag(sig);
    let mut out = vec![vec![P::zero(); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let phase = eta[i].clone() * eta[j].inv().expect("η is invertible");
            for mu in 0..2 {
                for nu in 0..2 {
                    let ci = c.get(&[i, mu, nu]);
                    if ci.is_zero() {
                        continue;
                    }
                    for rho in 0..2 {
                        for sg in 0..2 {
                            let cj = c.get(&[j, rho, sg]);
                            if cj.is_zero() {
                                continue;
                            }
                            let k = ci.clone() * cj.clone() * phase.clone();
                            *entry = &*entry + &(&m[mu][rho] * &m[nu][sg]).scale(&k);
                        }
                    }
                }
            }
        }
    }
    out
}

/// `R̂^{ij}_{kl}M^k_m M^l_n − M^i_k M^j_l R̂^{kl}_{mn}` for every index tuple.
pub fn rtt_relations<C: Coeff>(m: &[Vec<NcPoly<C>>], r: &Tensor<C>) -> Vec<([usize; 4], NcPoly<C>)> {
    let n = m.len();
    let mut mm = vec![NcPoly::zero(); n.pow(4)];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    mm[((a * n + b) * n + c) * n + d] = &m[a][c] * &m[b][d];
                }
            }
        }
    }
    let at = |a: usize, b: usize, c: usize, d: usize| &mm[((a * n + b) * n + c) * n + d];
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                for s in 0..n {
                    let mut res = NcPoly::zero();
                    for k in 0..n {
                        for l in 0..n {
                            let left = r.get(&[i, j, k, l]);
                            if !left.is_zero() {
                                res.add_scaled(at(k, l, p, s), left);
                            }
                            let right = r.get(&[k, l, p, s]);
                            if !right.is_zero() {
                                res.add_scaled(at(i, j, k, l), &-right.clone());
                            }
                        }
                    }
                    out.push(([i, j, p, s], res));
                }
            }
        }
    }
    out
}

/// Nonzero normal forms of [`rtt_relations`].
pub fn check_rtt(rs: &Sys, m: &MatrixNC, r: &Tensor<Scalar>) -> Vec<([usize; 4], P)> {
    let mut red = Reducer::new(rs);
    rtt_relations(m, r)
        .into_iter()
        .filter_map(|(idx, p)| {
            let nf = red.normal_form(&p);
            (!nf.is_zero()).then_some((idx, nf))
        })
        .collect()
}

/// Nonzero entries of `C_{ij} M^i_a M^j_b − C_{ab}`.
pub fn check_metric(rs: &Sys, m: &MatrixNC, c: &Tensor<Scalar>) -> Vec<([usize; 2], P)> {
    let n = m.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut res = P::constant(-c.get(&[a, b]).clone());
            for i in 0..n {
                for j in 0..n {
                    let cij = c.get(&[i, j]);
                    if !cij.is_zero() {
                        res.add_scaled(&(&m[i][a] * &m[j][b]), cij);
                    }
                }
            }
            let nf = rs.normal_form(&res);
            if !nf.is_zero() {
                out.push(([a, b], nf));
            }
        }
    }
    out
}

/// Antipode on the SU generators, extended as a linear antihomomorphism:
/// κ(α) = α*, κ(α*) = α, κ(γ) = −μγ, κ(γ*) = −μ⁻¹γ*.
pub fn kappa_su(rs: &Sys, p: &P) -> P {
    let names: Vec<String> = rs.generators().iter().map(|g| g.name.clone()).collect();
    p.anti_substitute(&|i| match names[i as usize].as_str() {
        "alpha" => rs.g("alpha*"),
        "alpha*" => rs.g("alpha"),
        "gamma" => rs.g("gamma").scale(&-Scalar::mu()),
        "gamma*" => rs.g("gamma*").scale(&-Scalar::q_pow(-2)),
        other => panic!("κ is only defined on the quantum group here, not on {other}"),
    })
}

/// Rules of the SU algebra whose κ-image does not reduce to zero.
pub fn kappa_violations(rs: &Sys) -> Vec<String> {
    rs.rules()
        .iter()
        .filter(|r| {
            let rel = &P::term(Scalar::one(), r.lhs.clone()) - &r.rhs;
            !rs.normal_form(&kappa_su(rs, &rel)).is_zero()
        })
        .map(|r| r.label.clone())
        .collect()
}

/// Entries with `κ(M^i_j) ≠ (M^j_i)*`.
pub fn check_star_m(rs: &Sys, m: &MatrixNC) -> Result<Vec<[usize; 2]>, NcError> {
    let n = m.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let d = &kappa_su(rs, &m[i][j]) - &rs.star(&m[j][i])?;
            if !rs.normal_form(&d).is_zero() {
                out.push([i, j]);
            }
        }
    }
    Ok(out)
}

/// Entries with `(M^i_j)* ≠ M^i_j` (real form).
pub fn check_real_m(rs: &Sys, m: &MatrixNC) -> Result<Vec<[usize; 2]>, NcError> {
    let n = m.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !rs.normal_form(&(&rs.star(&m[i][j])? - &m[i][j])).is_zero() {
                out.push([i, j]);
            }
        }
    }
    Ok(out)
}

/// Nonzero components of `ε_{ρσ} m^ρ_μ m^σ_ν − ε_{μν}`.
pub fn check_unimodularity(rs: &Sys, m: &MatrixNC) -> Vec<[usize; 2]> {
    let e = reg("eps_lo", Signature::Euclid);
    let mut out = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            let mut res = P::constant(-e.get(&[a, b]).clone());
            for r in 0..2 {
                for s in 0..2 {
                    res.add_scaled(&(&m[r][a] * &m[s][b]), e.get(&[r, s]));
                }
            }
            if !rs.normal_form(&res).is_zero() {
                out.push([a, b]);
            }
        }
    }
    out
}

/// `z^i = η_i c_i^{μν} x^μ x^ν v̄^k` with `k = 3n` (`ω̄ⁿ = v̄^{3n}`); negative
/// `k` uses powers of `v`.
pub fn build_z(rs: &Sys, sig: Signature, copy: &str, vbar_power: i64) -> Vec<P> {
    let c = reg("cg", sig);
    let eta = eta_diag(sig);
    let x = |i: usize| rs.g(&format!("{copy}{}", i + 1));
    let letter = if vbar_power >= 0 { "vbar" } else { "v" };
    let tail = (0..vbar_power.unsigned_abs()).fold(P::one(), |acc, _| &acc * &rs.g(letter));
    (0..3)
        .map(|i| {
            let mut zi = P::zero();
            for a in 0..2 {
                for b in 0..2 {
                    zi.add_scaled(&(&x(a) * &x(b)), c.get(&[i, a, b]));
                }
            }
            &zi.scale(&eta[i]) * &tail
        })
        .collect()
}

/// `Â^{ij}_{kl} z^k z^l` with Â the orthogonal antisymmetrizer.
pub fn plane_relations<C: Coeff>(a: &Tensor<C>, z: &[NcPoly<C>]) -> Vec<([usize; 2], NcPoly<C>)> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let mut res = NcPoly::zero();
            for k in 0..3 {
                for l in 0..3 {
                    let c = a.get(&[i, j, k, l]);
                    if !c.is_zero() {
                        res.add_scaled(&(&z[k] * &z[l]), c);
                    }
                }
            }
            out.push(([i, j], res));
        }
    }
    out
}

/// Nonzero components of `Â^{ij}_{kl} z^k z^l`.
pub fn check_plane(rs: &Sys, sig: Signature, z: &[P]) -> Vec<[usize; 2]> {
    plane_relations(&reg("projA_so", sig), z)
        .into_iter()
        .filter(|(_, p)| !rs.normal_form(p).is_zero())
        .map(|(idx, _)| idx)
        .collect()
}

/// `z^i M^j_k − R̂_so^{ij}_{lm} M^l_k z^m` for every `(i, j, k)`.
pub fn covariance_relations<C: Coeff>(
    r: &Tensor<C>,
    z: &[NcPoly<C>],
    m: &[Vec<NcPoly<C>>],
) -> Vec<([usize; 3], NcPoly<C>)> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let mut res = &z[i] * &m[j][k];
                for l in 0..3 {
                    for mm in 0..3 {
                        let c = r.get(&[i, j, l, mm]);
                        if !c.is_zero() {
                            res.add_scaled(&(&m[l][k] * &z[mm]), &-c.clone());
                        }
                    }
                }
                out.push(([i, j, k], res));
            }
        }
    }
    out
}

/// Nonzero components of `z^i M^j_k − R̂_so^{ij}_{lm} M^l_k z^m`.
pub fn check_covariance(rs: &Sys, sig: Signature, z: &[P], m: &MatrixNC) -> Vec<[usize; 3]> {
    let mut red = Reducer::new(rs);
    covariance_relations(&reg("rhat_so", sig), z, m)
        .into_iter()
        .filter(|(_, p)| !red.normal_form(p).is_zero())
        .map(|(idx, _)| idx)
        .collect()
}

/// Nonzero components of `z^i z̄_j − q⁻¹ z̄_a z^b (R̂_so⁻¹)^{ai}_{bj}` with
/// `z̄_j = (z^j)*`.
pub fn check_zzbar(rs: &Sys, z: &[P]) -> Result<Vec<[usize; 2]>, NcError> {
    let ri = reg("rhat_so_inv", Signature::Euclid);
    let zb: Vec<P> = z.iter().map(|p| rs.star(p)).collect::<Result<_, _>>()?;
    let qi = Scalar::q_pow(-4);
    let mut red = Reducer::new(rs);
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let mut res = &z[i] * &zb[j];
            for a in 0..3 {
                for b in 0..3 {
                    let c = ri.get(&[a, i, b, j]);
                    if !c.is_zero() {
                        res.add_scaled(&(&zb[a] * &z[b]), &-(c.clone() * qi.clone()));
                    }
                }
            }
            if !red.normal_form(&res).is_zero() {
                out.push([i, j]);
            }
        }
    }
    Ok(out)
}

/// Real form: `z_sym = v̄ (c x x) v̄` is self-adjoint and equals `Q² z` for
/// `z = (c x x) v̄²`.  Returns the failing components.
pub fn check_z_reality(rs: &Sys, sig: Signature) -> Result<Vec<usize>, NcError> {
    let bare = build_z(rs, sig, "x", 0);
    let z = build_z(rs, sig, "x", 2);
    let vb = rs.g("vbar");
    let mut out = Vec::new();
    for i in 0..3 {
        let sym = &(&vb * &bare[i]) * &vb;
        let real = rs.normal_form(&(&rs.star(&sym)? - &sym)).is_zero();
        let prop = rs.normal_form(&(&sym - &z[i].scale(&Scalar::q_pow(2)))).is_zero();
        if !(real && prop) {
            out.push(i);
        }
    }
    Ok(out)
}

/// Anchors of the embedding checks.
mod anchor {
    pub const RTT_SU: &str = "defining relations of the quantum group, unitary matrix m";
    pub const RTT_SO: &str = "RTT relations for the embedded vector matrix, verified by checking";
    pub const METRIC: &str = "metric invariance C_{ij} M M = C";
    pub const STAR: &str = "homogeneous part: kappa(c m m c) = (c m m c)*";
    pub const REAL: &str = "real form: coordinate functions may be chosen to be real";
    pub const UNIMOD: &str = "unimodularity via epsilon transport";
    pub const PLANE: &str = "A z z vanishes";
    pub const COV: &str = "covariance x M = gamma R M x, gamma = 1 for SO";
    pub const ZZBAR: &str = "z - zbar relation, we find n = 2/3";
}

fn run<T>(
    out: &mut Vec<CheckOutcome>,
    id: &str,
    anchor: &str,
    expect_fail: bool,
    f: impl FnOnce() -> Result<(Vec<T>, usize), NcError>,
) {
    let start = Instant::now();
    match f() {
        Ok((fails, total)) => out.push(CheckOutcome::exact(
            id,
            "embedding",
            anchor,
            fails.len(),
            total,
            expect_fail,
            start,
        )),
        Err(e) => out.push(CheckOutcome::error(id, "embedding", anchor, e.to_string(), None, start)),
    }
}

/// Every embedding check for one signature, including negative controls
/// (ids ending in `.rejected`, which pass when the corrupted identity
/// fails).
pub fn suite(sig: Signature) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let so = if sig == Signature::Euclid { "so3" } else { "so21" };
    let su = if sig == Signature::Euclid { "su2" } else { "sl2" };
    run(&mut out, &format!("embed.rtt.{su}"), anchor::RTT_SU, false, || {
        let rs = algebra("su2mu", sig)?;
        Ok((check_rtt(&rs, &m_matrix(&rs, sig), &reg("rhat_su2", sig)), 16))
    });
    run(
        &mut out,
        &format!("embed.rtt.{su}.corrupted.rejected"),
        anchor::RTT_SU,
        true,
        || {
            let rs = algebra("su2mu", sig)?;
            let mut m = m_matrix(&rs, sig);
            m[0][1] = m[0][1].scale(&Scalar::mu());
            Ok((check_rtt(&rs, &m, &reg("rhat_su2", sig)), 16))
        },
    );
    run(&mut out, &format!("embed.rtt.{so}"), anchor::RTT_SO, false, || {
        let rs = algebra("su2mu", sig)?;
        Ok((check_rtt(&rs, &embedded_m(&rs, sig), &reg("rhat_so", sig)), 81))
    });
    run(&mut out, &format!("embed.metric.{so}"), anchor::METRIC, false, || {
        let rs = algebra("su2mu", sig)?;
        Ok((check_metric(&rs, &embedded_m(&rs, sig), &reg("metricC", sig)), 9))
    });
    run(
        &mut out,
        &format!("embed.metric.{so}.identity.rejected"),
        anchor::METRIC,
        true,
        || {
            let rs = algebra("su2mu", sig)?;
            Ok((check_metric(&rs, &embedded_m(&rs, sig), &reg("delta3", sig)), 9))
        },
    );
    match sig {
        Signature::Euclid => {
            run(&mut out, "embed.kappa.su2", anchor::STAR, false, || {
                let rs = algebra("su2mu", sig)?;
                Ok((kappa_violations(&rs), rs.rules().len()))
            });
            run(&mut out, "embed.star.so3", anchor::STAR, false, || {
                let rs = algebra("su2mu", sig)?;
                Ok((check_star_m(&rs, &embedded_m(&rs, sig))?, 9))
            });
        }
        Signature::Lorentz => {
            run(&mut out, "embed.real.so21", anchor::REAL, false, || {
                let rs = algebra("su2mu", sig)?;
                Ok((check_real_m(&rs, &embedded_m(&rs, sig))?, 9))
            });
            run(&mut out, "embed.real.rules.so21", anchor::REAL, false, || {
                let rs = algebra("spinors", sig)?;
                Ok((rs.star_violations()?, rs.rules().len()))
            });
            run(&mut out, "embed.real.z.so21", anchor::REAL, false, || {
                let rs = scaling(sig)?;
                Ok((check_z_reality(&rs, sig)?, 3))
            });
        }
    }
    run(&mut out, &format!("embed.unimod.{su}"), anchor::UNIMOD, false, || {
        let rs = algebra("su2mu", sig)?;
        Ok((check_unimodularity(&rs, &m_matrix(&rs, sig)), 4))
    });
    if sig == Signature::Euclid {
        run(
            &mut out,
            "embed.unimod.su2.corrupted.rejected",
            anchor::UNIMOD,
            true,
            || {
                let rs = algebra("su2mu", sig)?;
                let mut m = m_matrix(&rs, sig);
                m[0][1] = rs.g("gamma*");
                Ok((check_unimodularity(&rs, &m), 4))
            },
        );
    }
    run(&mut out, &format!("embed.plane.{so}"), anchor::PLANE, false, || {
        let rs = scaling(sig)?;
        Ok((check_plane(&rs, sig, &build_z(&rs, sig, "x", 2)), 9))
    });
    run(
        &mut out,
        &format!("embed.plane.{so}.flipped.rejected"),
        anchor::PLANE,
        true,
        || {
            let rs = scaling_variant(sig, &Scalar::q_pow(-1), &-Scalar::mu())?;
            Ok((check_plane(&rs, sig, &build_z(&rs, sig, "x", 2)), 9))
        },
    );
    for (tag, k) in [("n0", 0), ("n23", 2)] {
        run(&mut out, &format!("embed.cov.{so}.{tag}"), anchor::COV, false, || {
            let rs = scaling(sig)?;
            Ok((
                check_covariance(&rs, sig, &build_z(&rs, sig, "x", k), &embedded_m(&rs, sig)),
                27,
            ))
        });
    }
    run(
        &mut out,
        &format!("embed.cov.{so}.gamma1.rejected"),
        anchor::COV,
        true,
        || {
            let rs = scaling_variant(sig, &Scalar::one(), &Scalar::mu())?;
            Ok((
                check_covariance(&rs, sig, &build_z(&rs, sig, "x", 2), &embedded_m(&rs, sig)),
                27,
            ))
        },
    );
    if sig == Signature::Euclid {
        run(&mut out, "embed.zzbar.n23", anchor::ZZBAR, false, || {
            let rs = conjugates()?;
            Ok((check_zzbar(&rs, &build_z(&rs, sig, "x", 2))?, 9))
        });
        run(&mut out, "embed.zzbar.n0.rejected", anchor::ZZBAR, true, || {
            let rs = conjugates()?;
            Ok((check_zzbar(&rs, &build_z(&rs, sig, "x", 0))?, 9))
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_entry_is_alpha_squared() {
        let rs = algebra("su2mu", Signature::Euclid).unwrap();
        let m = embedded_m(&rs, Signature::Euclid);
        assert_eq!(m[0][0], rs.word(&["alpha", "alpha"]));
        assert!(m[1][1]
            .coeff(&[rs.index_of("alpha").unwrap(), rs.index_of("alpha*").unwrap()])
            .is_some());
    }

    #[test]
    fn counit_gives_identity() {
        for sig in [Signature::Euclid, Signature::Lorentz] {
            let rs = algebra("su2mu", sig).unwrap();
            let m = embedded_m(&rs, sig);
            let counit = |i: u16| match rs.generators()[i as usize].name.as_str() {
                "alpha" | "alpha*" | "a" | "d" => P::one(),
                _ => P::zero(),
            };
            for (i, row) in m.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    let v = e.substitute(&counit);
                    assert_eq!(v, if i == j { P::one() } else { P::zero() }, "{sig} {i}{j}");
                }
            }
        }
    }

    #[test]
    fn z_components() {
        let rs = scaling(Signature::Lorentz).unwrap();
        let z = build_z(&rs, Signature::Lorentz, "x", 2);
        let s_inv = Scalar::s().inv().unwrap();
        let expect = &rs
            .word(&["x1", "x2", "vbar", "vbar"])
            .scale(&(Scalar::mu() * s_inv.clone()))
            + &rs.word(&["x2", "x1", "vbar", "vbar"]).scale(&s_inv);
        assert_eq!(z[1], expect);
        assert_eq!(z[0], rs.word(&["x1", "x1", "vbar", "vbar"]));
    }

    #[test]
    fn euclid_suite_passes() {
        for c in suite(Signature::Euclid) {
            assert!(c.passed, "{} {:?}", c.id, c.detail);
        }
    }

    #[test]
    fn lorentz_suite_passes() {
        for c in suite(Signature::Lorentz) {
            assert!(c.passed, "{} {:?}", c.id, c.detail);
        }
    }
}
