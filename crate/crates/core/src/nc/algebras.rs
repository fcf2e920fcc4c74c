//! Builders for the algebras used in the embedding: SU_μ(2) (resp.
//! SL_μ(2,R)), quantum planes, scaling, two spinor copies, conjugates,
//! the extended coordinate algebra and the ρ/Θ algebra.

use super::poly::NcPoly;
use super::system::{qcommutation_factor, solve_combination, NcError, RewriteSystem, SystemBuilder};
use crate::scalar::Scalar;
use crate::tensor::{constant, Signature, Tensor};
use num_traits::{One, Zero};

pub type ExactSystem = RewriteSystem<Scalar>;
type Builder = SystemBuilder<Scalar>;
type P = NcPoly<Scalar>;

pub const ALGEBRA_NAMES: &[&str] = &[
    "su2mu",
    "plane",
    "scaling",
    "spinors",
    "conjugates",
    "extended",
    "rho_theta",
    "corrupted",
];

/// Builds a named algebra.  Under the lorentz signature `su2mu` is the
/// real form SL_μ(2,R) with self-adjoint generators a, b, c, d and the
/// coordinate planes are real; `conjugates`, `extended` and `rho_theta`
/// exist only for the euclid signature.
pub fn algebra(name: &str, sig: Signature) -> Result<ExactSystem, NcError> {
    let euclid_only = |f: fn() -> Result<ExactSystem, NcError>| {
        if sig == Signature::Euclid {
            f()
        } else {
            Err(NcError::WrongSignature(name.to_string(), sig.to_string()))
        }
    };
    match name {
        "su2mu" => su2mu(sig),
        "plane" => plane(sig),
        "scaling" => scaling(sig),
        "spinors" => spinors(sig),
        "conjugates" => euclid_only(conjugates),
        "extended" => euclid_only(extended),
        "rho_theta" => euclid_only(rho_theta),
        "corrupted" => euclid_only(corrupted),
        _ => Err(NcError::UnknownAlgebra(name.to_string())),
    }
}

fn q(k: i64) -> Scalar {
    Scalar::q_pow(k)
}

fn rhat(inverse: bool) -> Tensor<Scalar> {
    constant(if inverse { "rhat_su2_inv" } else { "rhat_su2" }, Signature::Euclid).expect("registry")
}

/// `γ` of the inhomogeneous relations for the quantum group of parameter μ.
fn gamma_const() -> Scalar {
    q(-1)
}

/// Names of the quantum-group matrix generators and the coefficients of
/// `M = [[α, −μγ*], [γ, α*]]` (euclid) or `[[a, b], [c, d]]` (lorentz).
fn m_entry(sig: Signature, j: usize, k: usize) -> (&'static str, Scalar) {
    match sig {
        Signature::Euclid => [
            [("alpha", Scalar::one()), ("gamma*", -Scalar::mu())],
            [("gamma", Scalar::one()), ("alpha*", Scalar::one())],
        ][j][k]
            .clone(),
        Signature::Lorentz => [
            [("a", Scalar::one()), ("b", Scalar::one())],
            [("c", Scalar::one()), ("d", Scalar::one())],
        ][j][k]
            .clone(),
    }
}

/// The matrix element `M^j_k` as a polynomial of `rs` or a builder.
pub fn m_poly(sig: Signature, g: &dyn Fn(&str) -> P, j: usize, k: usize) -> P {
    let (n, c) = m_entry(sig, j, k);
    g(n).scale(&c)
}

fn quantum_group(b: &mut Builder, sig: Signature) -> Result<(), NcError> {
    match sig {
        Signature::Euclid => {
            b.gen("gamma", Some("gamma*"), 1)?;
            b.gen("gamma*", Some("gamma"), 1)?;
            b.gen("alpha", Some("alpha*"), 1)?;
            b.gen("alpha*", Some("alpha"), 1)?;
        }
        Signature::Lorentz => {
            for n in ["b", "c", "a", "d"] {
                b.gen(n, Some(n), 1)?;
            }
        }
    }
    Ok(())
}

fn quantum_group_relations(b: &mut Builder, sig: Signature, corrupt: bool) {
    let w = |b: &Builder, s: &[&str]| s.iter().fold(P::one(), |acc, n| &acc * &b.g(n));
    let mu = Scalar::mu();
    match sig {
        Signature::Euclid => {
            for (label, lhs, rhs) in su_printed(&|n| b.g(n), corrupt) {
                b.relation_starred(&label, lhs, rhs);
            }
        }
        Signature::Lorentz => {
            let mi = q(-2);
            b.relation("ab = μba", w(b, &["a", "b"]), w(b, &["b", "a"]).scale(&mu));
            b.relation("ac = μca", w(b, &["a", "c"]), w(b, &["c", "a"]).scale(&mu));
            b.relation("db = μ⁻¹bd", w(b, &["d", "b"]), w(b, &["b", "d"]).scale(&mi));
            b.relation("dc = μ⁻¹cd", w(b, &["d", "c"]), w(b, &["c", "d"]).scale(&mi));
            b.relation("cb = bc", w(b, &["c", "b"]), w(b, &["b", "c"]));
            b.relation(
                "ad = 1 + μbc",
                w(b, &["a", "d"]),
                &P::one() + &w(b, &["b", "c"]).scale(&mu),
            );
            b.relation(
                "da = 1 + μ⁻¹bc",
                w(b, &["d", "a"]),
                &P::one() + &w(b, &["b", "c"]).scale(&mi),
            );
        }
    }
}

/// The printed relations of SU_μ(2) (stars not included); `corrupt` drops
/// the μ of the first one.
pub fn su_printed(g: &dyn Fn(&str) -> P, corrupt: bool) -> Vec<(String, P, P)> {
    let w = |s: &[&str]| s.iter().fold(P::one(), |acc, n| &acc * &g(n));
    let mu = Scalar::mu();
    let f = if corrupt { Scalar::one() } else { mu.clone() };
    vec![
        (
            "αγ = μγα".into(),
            w(&["alpha", "gamma"]),
            w(&["gamma", "alpha"]).scale(&f),
        ),
        (
            "αγ* = μγ*α".into(),
            w(&["alpha", "gamma*"]),
            w(&["gamma*", "alpha"]).scale(&mu),
        ),
        ("γγ* = γ*γ".into(), w(&["gamma", "gamma*"]), w(&["gamma*", "gamma"])),
        (
            "α*α + γ*γ = 1".into(),
            &w(&["alpha*", "alpha"]) + &w(&["gamma*", "gamma"]),
            P::one(),
        ),
        (
            "αα* + μ²γ*γ = 1".into(),
            &w(&["alpha", "alpha*"]) + &w(&["gamma*", "gamma"]).scale(&q(4)),
            P::one(),
        ),
    ]
}

fn qg_names(sig: Signature) -> [&'static str; 4] {
    match sig {
        Signature::Euclid => ["gamma", "gamma*", "alpha", "alpha*"],
        Signature::Lorentz => ["b", "c", "a", "d"],
    }
}

/// A copy of the quantum plane: coordinate names and (euclid) the names
/// of the conjugate coordinates.
#[derive(Clone, Copy)]
struct Copy2 {
    x: [&'static str; 2],
    bar: [&'static str; 2],
}

const XC: Copy2 = Copy2 {
    x: ["x1", "x2"],
    bar: ["xbar1", "xbar2"],
};
const YC: Copy2 = Copy2 {
    x: ["y1", "y2"],
    bar: ["ybar1", "ybar2"],
};

fn star_of(sig: Signature, conj: bool, c: &Copy2, i: usize) -> Option<&'static str> {
    match (sig, conj) {
        (Signature::Lorentz, _) => Some(c.x[i]),
        (Signature::Euclid, true) => Some(c.bar[i]),
        (Signature::Euclid, false) => None,
    }
}

/// `x^i M^j_k = γ R̂^{ij}_{lm} M^l_k x^m` and `Âxx = 0`.
fn plane_relations(b: &mut Builder, sig: Signature, c: &Copy2, starred: bool) {
    plane_relations_with(b, sig, c, starred, &gamma_const(), &Scalar::mu());
}

fn plane_relations_with(b: &mut Builder, sig: Signature, c: &Copy2, starred: bool, gamma: &Scalar, xx: &Scalar) {
    let r = rhat(false);
    let g = |n: &str| b.g(n);
    let mut rels = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let lhs = &g(c.x[i]) * &m_poly(sig, &g, j, k);
                let mut rhs = P::zero();
                for l in 0..2 {
                    for m in 0..2 {
                        let coef = r.get(&[i, j, l, m]).clone() * gamma.clone();
                        if !coef.is_zero() {
                            rhs = &rhs + &(&m_poly(sig, &g, l, k) * &g(c.x[m])).scale(&coef);
                        }
                    }
                }
                rels.push((format!("{}·M{}{} covariance", c.x[i], j + 1, k + 1), lhs, rhs));
            }
        }
    }
    rels.push((
        format!("{0}{1} = μ{1}{0}", c.x[0], c.x[1]),
        &g(c.x[0]) * &g(c.x[1]),
        (&g(c.x[1]) * &g(c.x[0])).scale(xx),
    ));
    for (l, a, bb) in rels {
        if starred {
            b.relation_starred(&l, a, bb);
        } else {
            b.relation(&l, a, bb);
        }
    }
}

/// `v v̄ = v̄ v = 1`, v central in the quantum group, `v x = Q⁻¹ x v`.
fn scaling_relations(b: &mut Builder, sig: Signature, copies: &[Copy2], starred: bool) {
    let g = |n: &str| b.g(n);
    let mut rels = vec![
        ("v v̄ = 1".to_string(), &g("v") * &g("vbar"), P::one()),
        ("v̄ v = 1".to_string(), &g("vbar") * &g("v"), P::one()),
    ];
    for n in qg_names(sig) {
        rels.push((format!("v {n} = {n} v"), &g("v") * &g(n), &g(n) * &g("v")));
        rels.push((format!("v̄ {n} = {n} v̄"), &g("vbar") * &g(n), &g(n) * &g("vbar")));
    }
    for c in copies {
        for x in c.x {
            rels.push((
                format!("v {x} = Q⁻¹ {x} v"),
                &g("v") * &g(x),
                (&g(x) * &g("v")).scale(&q(-1)),
            ));
            rels.push((
                format!("v̄ {x} = Q {x} v̄"),
                &g("vbar") * &g(x),
                (&g(x) * &g("vbar")).scale(&q(1)),
            ));
        }
    }
    for (l, a, bb) in rels {
        if starred {
            b.relation_starred(&l, a, bb);
        } else {
            b.relation(&l, a, bb);
        }
    }
}

/// Which R-matrix the x–y coupling ansatz `y^i x^j = λ R^{ij}_{rs} x^r y^s`
/// uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XyAnsatz {
    Rhat,
    RhatInverse,
}

fn xy_relations(b: &mut Builder, ansatz: XyAnsatz, lambda: &Scalar, starred: bool) {
    let r = rhat(ansatz == XyAnsatz::RhatInverse);
    for i in 0..2 {
        for j in 0..2 {
            let lhs = &b.g(YC.x[i]) * &b.g(XC.x[j]);
            let mut rhs = P::zero();
            for rr in 0..2 {
                for s in 0..2 {
                    let c = r.get(&[i, j, rr, s]).clone() * lambda.clone();
                    rhs = &rhs + &(&b.g(XC.x[rr]) * &b.g(YC.x[s])).scale(&c);
                }
            }
            let label = format!("y{}x{} coupling", i + 1, j + 1);
            if starred {
                b.relation_starred(&label, lhs, rhs);
            } else {
                b.relation(&label, lhs, rhs);
            }
        }
    }
}

fn base(name: &str, sig: Signature, conj: bool, copies: &[Copy2], with_v: bool) -> Result<Builder, NcError> {
    let mut b = Builder::new(name, sig.star_mode(), gamma_const());
    if conj {
        for c in copies {
            for i in 0..2 {
                b.gen(c.bar[i], Some(c.x[i]), 1)?;
            }
        }
    }
    quantum_group(&mut b, sig)?;
    if with_v {
        match sig {
            Signature::Euclid => {
                b.gen("v", Some("vbar"), 1)?;
                b.gen("vbar", Some("v"), 1)?;
            }
            Signature::Lorentz => {
                b.gen("v", Some("v"), 1)?;
                b.gen("vbar", Some("vbar"), 1)?;
            }
        }
    }
    for c in copies {
        for i in 0..2 {
            b.gen(c.x[i], star_of(sig, conj, c, i), 1)?;
        }
    }
    Ok(b)
}

pub fn su2mu(sig: Signature) -> Result<ExactSystem, NcError> {
    let name = if sig == Signature::Euclid { "su2mu" } else { "sl2mu" };
    let mut b = base(name, sig, false, &[], false)?;
    quantum_group_relations(&mut b, sig, false);
    b.build()
}

/// The printed SU_μ(2) relations with the μ dropped from `αγ = μγα`.
pub fn corrupted() -> Result<ExactSystem, NcError> {
    let mut b = base("corrupted", Signature::Euclid, false, &[], false)?;
    quantum_group_relations(&mut b, Signature::Euclid, true);
    b.build()
}

pub fn plane(sig: Signature) -> Result<ExactSystem, NcError> {
    let mut b = base("plane", sig, false, &[XC], false)?;
    quantum_group_relations(&mut b, sig, false);
    plane_relations(&mut b, sig, &XC, false);
    b.build()
}

pub fn scaling(sig: Signature) -> Result<ExactSystem, NcError> {
    scaling_variant(sig, &gamma_const(), &Scalar::mu())
}

/// The scaling algebra with a chosen `γ` in the x–M rule and a chosen
/// factor `f` in `x¹x² = f x²x¹` (for negative controls).
pub fn scaling_variant(sig: Signature, gamma: &Scalar, xx: &Scalar) -> Result<ExactSystem, NcError> {
    let mut b = base("scaling", sig, false, &[XC], true)?;
    quantum_group_relations(&mut b, sig, false);
    plane_relations_with(&mut b, sig, &XC, false, gamma, xx);
    scaling_relations(&mut b, sig, &[XC], false);
    b.build()
}

/// Two spinor copies with the x–y coupling at a given `λ`.
pub fn spinors_with(sig: Signature, ansatz: XyAnsatz, lambda: &Scalar) -> Result<ExactSystem, NcError> {
    let mut b = base("spinors", sig, false, &[XC, YC], true)?;
    quantum_group_relations(&mut b, sig, false);
    plane_relations(&mut b, sig, &XC, false);
    plane_relations(&mut b, sig, &YC, false);
    scaling_relations(&mut b, sig, &[XC, YC], false);
    xy_relations(&mut b, ansatz, lambda, false);
    b.build()
}

/// The invariant pairing `ε_{νμ} x^ν y^μ`.
pub fn epsilon_pairing(rs: &ExactSystem) -> P {
    let e = constant("eps_lo", Signature::Euclid).expect("registry");
    let mut out = P::zero();
    for n in 0..2 {
        for m in 0..2 {
            out = &out + &(&rs.g(XC.x[n]) * &rs.g(YC.x[m])).scale(e.get(&[n, m]));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct XyCoupling {
    pub lambda: Scalar,
    /// `c` with `x²y² = c·y²x²` in the solved system.
    pub x2y2_factor: Option<Scalar>,
}

/// Solves for `λ` by demanding that `ε_{νμ}x^νy^μ` commutes with all
/// coordinates.  The commutator residual is affine in `λ`, so two
/// evaluations determine it; the solution must be unique.
pub fn solve_xy_coupling(sig: Signature, ansatz: XyAnsatz) -> Result<XyCoupling, NcError> {
    let s0 = spinors_with(sig, ansatz, &Scalar::zero())?;
    let s1 = spinors_with(sig, ansatz, &Scalar::one())?;
    let residual = |rs: &ExactSystem, g: &str| {
        let d = epsilon_pairing(rs);
        rs.normal_form(&(&(&d * &rs.g(g)) - &(&rs.g(g) * &d)))
    };
    let mut lambda: Option<Scalar> = None;
    for g in XC.x.iter().chain(YC.x.iter()) {
        let r0 = residual(&s0, g);
        let slope = &residual(&s1, g) - &r0;
        if slope.is_zero() {
            if !r0.is_zero() {
                return Err(NcError::NoSolution(format!(
                    "commutator with {g} is independent of λ and nonzero"
                )));
            }
            continue;
        }
        let sol = solve_combination(&-&r0, &[slope])
            .ok_or_else(|| NcError::NoSolution(format!("commutator with {g} has no root in λ")))?;
        match &lambda {
            Some(l) if *l != sol[0] => return Err(NcError::NoSolution("generators demand different λ".into())),
            _ => lambda = Some(sol[0].clone()),
        }
    }
    let lambda = lambda.ok_or_else(|| NcError::NoSolution("λ is not determined".into()))?;
    let rs = spinors_with(sig, ansatz, &lambda)?;
    let x2y2_factor = qcommutation_factor(&rs, &rs.g("x2"), &rs.g("y2"));
    Ok(XyCoupling { lambda, x2y2_factor })
}

pub fn spinors(sig: Signature) -> Result<ExactSystem, NcError> {
    let c = solve_xy_coupling(sig, XyAnsatz::RhatInverse)?;
    spinors_with(sig, XyAnsatz::RhatInverse, &c.lambda)
}

/// Scalar in front of `(R̂⁻¹)` in `x^i x̄_j = f x̄_a x^b (R̂⁻¹)^{ai}_{bj}`.
pub fn conjugate_factor() -> Scalar {
    q(-2)
}

/// Both spinor copies, their conjugates and the star of every relation.
pub fn conjugates() -> Result<ExactSystem, NcError> {
    conjugates_with(conjugate_factor())
}

pub fn conjugates_with(factor: Scalar) -> Result<ExactSystem, NcError> {
    let sig = Signature::Euclid;
    let lambda = solve_xy_coupling(sig, XyAnsatz::RhatInverse)?.lambda;
    let mut b = base("conjugates", sig, true, &[XC, YC], true)?;
    quantum_group_relations(&mut b, sig, false);
    plane_relations(&mut b, sig, &XC, true);
    plane_relations(&mut b, sig, &YC, true);
    scaling_relations(&mut b, sig, &[XC, YC], true);
    xy_relations(&mut b, XyAnsatz::RhatInverse, &lambda, true);
    let ri = rhat(true);
    for c in [XC, YC] {
        for d in [XC, YC] {
            for i in 0..2 {
                for j in 0..2 {
                    let lhs = &b.g(c.x[i]) * &b.g(d.bar[j]);
                    let mut rhs = P::zero();
                    for a in 0..2 {
                        for bb in 0..2 {
                            let k = ri.get(&[a, i, bb, j]).clone() * factor.clone();
                            rhs = &rhs + &(&b.g(d.bar[a]) * &b.g(c.x[bb])).scale(&k);
                        }
                    }
                    b.relation_starred(&format!("{}·{} exchange", c.x[i], d.bar[j]), lhs, rhs);
                }
            }
        }
    }
    b.build()
}

/// `κ(x^1) = −ω⁻¹(α*x¹ + γ*x²)`, `κ(x²) = ω⁻¹(μγx¹ − αx²)` with `ω = v³`.
pub fn kappa(rs: &ExactSystem, copy: &str, idx: usize) -> P {
    let x = |i: usize| rs.g(&format!("{copy}{i}"));
    let winv = rs.word(&["vbar", "vbar", "vbar"]);
    let inner = match idx {
        1 => -&(&(&rs.g("alpha*") * &x(1)) + &(&rs.g("gamma*") * &x(2))),
        2 => &(&rs.g("gamma") * &x(1)).scale(&Scalar::mu()) - &(&rs.g("alpha") * &x(2)),
        _ => panic!("spinor index is 1 or 2"),
    };
    &winv * &inner
}

/// Generators of the extended coordinate algebra, in order, with their
/// value in the conjugates algebra (`None` for the adjoined inverses).
fn extended_alphabet(host: &ExactSystem) -> Result<Vec<(&'static str, &'static str, Option<P>)>, NcError> {
    let kx = kappa(host, "x", 2);
    let ky = kappa(host, "y", 2);
    Ok(vec![
        ("gamma^-1", "gamma*^-1", None),
        ("gamma", "gamma*", Some(host.g("gamma"))),
        ("gamma*^-1", "gamma^-1", None),
        ("gamma*", "gamma", Some(host.g("gamma*"))),
        ("xbar2", "x2", Some(host.g("xbar2"))),
        ("ybar2", "y2", Some(host.g("ybar2"))),
        ("kx2*", "kx2", Some(host.star(&kx)?)),
        ("ky2*", "ky2", Some(host.star(&ky)?)),
        ("alpha", "alpha*", Some(host.g("alpha"))),
        ("alpha*", "alpha", Some(host.g("alpha*"))),
        ("v", "vbar", Some(host.g("v"))),
        ("vbar", "v", Some(host.g("vbar"))),
        ("kx2", "kx2*", Some(kx)),
        ("ky2", "ky2*", Some(ky)),
        ("x2", "xbar2", Some(host.g("x2"))),
        ("y2", "ybar2", Some(host.g("y2"))),
    ])
}

/// The coordinate algebra on `x², y², κ(x²), κ(y²)`, their conjugates, the
/// quantum group, `v` and `γ⁻¹`.  Every rule is derived from the
/// conjugates algebra, where `κ` is expressed through `ω⁻¹ = v̄³`:
/// q-commutation factors are computed there, and the one non-monomial
/// exchange `y²κ(x²)` is verified there before installation.
pub fn extended() -> Result<ExactSystem, NcError> {
    let host = conjugates()?;
    let alphabet = extended_alphabet(&host)?;
    let mut b = Builder::new("extended", Signature::Euclid.star_mode(), gamma_const());
    for (n, s, _) in &alphabet {
        b.gen(n, Some(s), 1)?;
    }
    quantum_group_relations(&mut b, Signature::Euclid, false);
    let g = |b: &Builder, n: &str| b.g(n);
    for (x, xi) in [("gamma", "gamma^-1"), ("gamma*", "gamma*^-1")] {
        b.relation(&format!("{x}·{xi} = 1"), &g(&b, x) * &g(&b, xi), P::one());
        b.relation(&format!("{xi}·{x} = 1"), &g(&b, xi) * &g(&b, x), P::one());
    }
    b.relation("v v̄ = 1", &g(&b, "v") * &g(&b, "vbar"), P::one());
    b.relation("v̄ v = 1", &g(&b, "vbar") * &g(&b, "v"), P::one());
    b.relation(
        "γ⁻¹γ*⁻¹ = γ*⁻¹γ⁻¹",
        &g(&b, "gamma^-1") * &g(&b, "gamma*^-1"),
        &g(&b, "gamma*^-1") * &g(&b, "gamma^-1"),
    );
    let qg = ["gamma", "gamma*", "alpha", "alpha*"];
    let host_poly: Vec<(&str, &P)> = alphabet
        .iter()
        .filter_map(|(n, _, p)| p.as_ref().map(|p| (*n, p)))
        .collect();
    for (ia, (a, pa)) in host_poly.iter().enumerate() {
        for (b_name, pb) in &host_poly[..ia] {
            if (qg.contains(a) && qg.contains(b_name)) || (*a == "vbar" && *b_name == "v") {
                continue;
            }
            let label = format!("{a}·{b_name} exchange");
            match qcommutation_factor(&host, pa, pb) {
                Some(c) => b.relation(
                    &label,
                    &g(&b, a) * &g(&b, b_name),
                    (&g(&b, b_name) * &g(&b, a)).scale(&c),
                ),
                None => {
                    let (lhs, rhs) = mixed_exchange(&b, a, b_name)
                        .ok_or_else(|| NcError::NoSolution(format!("{a} and {b_name} do not q-commute")))?;
                    b.relation(&label, lhs, rhs);
                }
            }
        }
        // γ⁻¹ and γ*⁻¹ against everything else, from the factors of γ, γ*.
        if !qg.contains(a) {
            for (gn, gi) in [("gamma", "gamma^-1"), ("gamma*", "gamma*^-1")] {
                let c = qcommutation_factor(&host, pa, &host.g(gn))
                    .ok_or_else(|| NcError::NoSolution(format!("{a} and {gn} do not q-commute")))?;
                let ci = c
                    .inv()
                    .map_err(|_| NcError::NoSolution(format!("{a}·{gn} factor vanishes")))?;
                b.relation(
                    &format!("{a}·{gi} exchange"),
                    &g(&b, a) * &g(&b, gi),
                    (&g(&b, gi) * &g(&b, a)).scale(&ci),
                );
            }
        } else {
            for (gn, gi) in [("gamma", "gamma^-1"), ("gamma*", "gamma*^-1")] {
                if *a == gn {
                    continue;
                }
                let c = qcommutation_factor(&host, pa, &host.g(gn)).expect("quantum group generators q-commute with γ");
                let ci = c.inv().expect("nonzero");
                b.relation(
                    &format!("{a}·{gi} exchange"),
                    &g(&b, a) * &g(&b, gi),
                    (&g(&b, gi) * &g(&b, a)).scale(&ci),
                );
            }
        }
    }
    let rs = b.build()?;
    verify_in_host(&rs, &host, &alphabet)?;
    Ok(rs)
}

/// `y²κ(x²) = μ⁻¹κ(x²)y² + (μ⁻²−1)κ(y²)x²` and its star.
fn mixed_exchange(b: &Builder, a: &str, c: &str) -> Option<(P, P)> {
    let mi = q(-2);
    let k = q(-4) - Scalar::one();
    let w = |x: &str, y: &str| &b.g(x) * &b.g(y);
    match (a, c) {
        ("y2", "kx2") => Some((w("y2", "kx2"), &w("kx2", "y2").scale(&mi) + &w("ky2", "x2").scale(&k))),
        ("kx2*", "ybar2") => Some((
            w("kx2*", "ybar2"),
            &w("ybar2", "kx2*").scale(&mi) + &w("xbar2", "ky2*").scale(&k),
        )),
        _ => None,
    }
}

/// Every rule of `rs` free of the adjoined inverses must reduce to zero
/// in the host once letters are replaced by their host values.  Rules
/// with inverses are inverted q-commutations and hold by construction.
fn verify_in_host(
    rs: &ExactSystem,
    host: &ExactSystem,
    alphabet: &[(&'static str, &'static str, Option<P>)],
) -> Result<(), NcError> {
    let values: Vec<Option<&P>> = alphabet.iter().map(|(_, _, p)| p.as_ref()).collect();
    for r in rs.rules() {
        if r.lhs
            .iter()
            .chain(r.rhs.terms().flat_map(|(w, _)| w.iter()))
            .any(|&i| values[i as usize].is_none())
        {
            continue;
        }
        let rel = &NcPoly::term(Scalar::one(), r.lhs.clone()) - &r.rhs;
        let image = rel.substitute(&|i| values[i as usize].unwrap().clone());
        if !host.normal_form(&image).is_zero() {
            return Err(NcError::NoSolution(format!(
                "rule `{}` does not hold in the conjugates algebra",
                r.label
            )));
        }
    }
    Ok(())
}

/// The printed ρ/Θ relations and their stars, over the quantum group.
pub fn rho_theta() -> Result<ExactSystem, NcError> {
    let mut b = Builder::new("rho_theta", Signature::Euclid.star_mode(), gamma_const());
    quantum_group(&mut b, Signature::Euclid)?;
    for n in ["rho1", "rho2", "theta2", "theta1"] {
        let s = format!("{n}*");
        b.gen(n, Some(&s), 1)?;
        b.gen(&s, Some(n), 1)?;
    }
    quantum_group_relations(&mut b, Signature::Euclid, false);
    for (l, lhs, rhs) in rho_theta_printed(&|n| b.g(n)) {
        b.relation_starred(&l, lhs, rhs);
    }
    b.build()
}

/// The printed relations with coordinate functions, as `(label, lhs, rhs)`
/// over any alphabet providing the names used.
pub fn rho_theta_printed(g: &dyn Fn(&str) -> P) -> Vec<(String, P, P)> {
    let w = |a: &str, b: &str| &g(a) * &g(b);
    let mut out = Vec::new();
    let mut qrel = |a: &str, b: &str, k: i64| {
        out.push((format!("{a}{b} = Q^{k} {b}{a}"), w(a, b), w(b, a).scale(&q(k))));
    };
    for i in ["1", "2"] {
        let (r, rs, t, ts) = (
            format!("rho{i}"),
            format!("rho{i}*"),
            format!("theta{i}"),
            format!("theta{i}*"),
        );
        qrel(&r, "alpha", 1);
        qrel(&r, "alpha*", -1);
        qrel(&r, "gamma", 1);
        qrel(&r, "gamma*", -1);
        qrel(&t, "alpha", 1);
        qrel(&t, "alpha*", -1);
        qrel(&t, "gamma", -1);
        qrel(&t, "gamma*", 1);
        qrel(&t, &ts, 0);
        qrel(&r, &rs, 2);
        qrel(&r, &t, -3);
        qrel(&rs, &t, -1);
    }
    qrel("theta1", "theta2", 2);
    qrel("rho1", "rho2", 2);
    qrel("rho1", "theta2", -1);
    qrel("rho1", "rho2*", 2);
    qrel("theta1", "rho2*", 1);
    qrel("theta2", "rho1*", 1);
    qrel("theta1", "theta2*", 0);
    out.push((
        "theta1 rho2 = (Q^2 - Q^-2) theta2 rho1 + Q rho2 theta1".into(),
        w("theta1", "rho2"),
        &w("theta2", "rho1").scale(&(q(2) - q(-2))) + &w("rho2", "theta1").scale(&q(1)),
    ));
    out
}

/// A printed relation checked against a derived algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Claim {
    pub label: String,
    pub holds: bool,
}

fn claim(rs: &ExactSystem, label: String, lhs: &P, rhs: &P) -> Claim {
    Claim {
        holds: rs.normal_form(&(lhs - rhs)).is_zero(),
        label,
    }
}

/// The printed relations of the second coordinate, of its antipode image
/// and of the mixed table as `(label, lhs, rhs)` over the conjugates
/// algebra `rs`, with `κ(x^τ)` expressed through `ω⁻¹`.
pub fn coordinate_relations(rs: &ExactSystem) -> Result<Vec<(String, P, P)>, NcError> {
    let mu = Scalar::mu();
    let mi = q(-2);
    let g = |n: &str| rs.g(n);
    let k = |c: &str, i: usize| kappa(rs, c, i);
    let mut out = Vec::new();
    let qc = |out: &mut Vec<(String, P, P)>, label: String, a: &P, b: &P, c: &Scalar| {
        out.push((label, a * b, (b * a).scale(c)));
    };
    let x2 = g("x2");
    let kx2 = k("x", 2);
    for (n, f, t) in [
        ("alpha", &mi, "μ⁻¹"),
        ("gamma", &mu, "μ"),
        ("alpha*", &mu, "μ"),
        ("gamma*", &mi, "μ⁻¹"),
    ] {
        qc(&mut out, format!("x2 {n} = {t} {n} x2"), &x2, &g(n), f);
    }
    for (n, f, t) in [
        ("alpha*", &mi, "μ⁻¹"),
        ("gamma", &mu, "μ"),
        ("alpha", &mu, "μ"),
        ("gamma*", &mi, "μ⁻¹"),
    ] {
        qc(&mut out, format!("{n} κ(x2) = {t} κ(x2) {n}"), &g(n), &kx2, f);
    }
    qc(&mut out, "x2 y2 = μ y2 x2".into(), &x2, &g("y2"), &mu);
    let ky2 = k("y", 2);
    qc(&mut out, "κ(x2) κ(y2) = μ⁻¹ κ(y2) κ(x2)".into(), &kx2, &ky2, &mi);
    qc(
        &mut out,
        "κ(x2) κ(y2)* = μ² κ(y2)* κ(x2)".into(),
        &kx2,
        &rs.star(&ky2)?,
        &q(4),
    );
    for t in 1..=2 {
        for d in 1..=2 {
            let xt = g(&format!("x{t}"));
            let yt = g(&format!("y{t}"));
            qc(
                &mut out,
                format!("x{t} κ(x{d}) = μ⁻² κ(x{d}) x{t}"),
                &xt,
                &k("x", d),
                &q(-4),
            );
            qc(
                &mut out,
                format!("x{t} κ(y{d}) = μ⁻¹ κ(y{d}) x{t}"),
                &xt,
                &k("y", d),
                &mi,
            );
            let rhs = &(&k("x", d) * &yt).scale(&mi) + &(&k("y", d) * &xt).scale(&(q(-4) - Scalar::one()));
            out.push((
                format!("y{t} κ(x{d}) = μ⁻¹ κ(x{d}) y{t} + (μ⁻² − 1) κ(y{d}) x{t}"),
                &yt * &k("x", d),
                rhs,
            ));
            for a in ["x", "y"] {
                for b in ["x", "y"] {
                    let bar = g(&format!("{a}bar{t}"));
                    let kb = k(b, d);
                    out.push((
                        format!("{a}bar{t} κ({b}{d}) = κ({b}{d}) {a}bar{t}"),
                        &bar * &kb,
                        &kb * &bar,
                    ));
                }
            }
        }
    }
    // x¹ is recovered from x², κ(x²) and the quantum group.
    for c in ["x", "y"] {
        let lhs = &g("gamma") * &g(&format!("{c}1")).scale(&mu);
        let rhs = &(&rs.word(&["v", "v", "v"]) * &k(c, 2)) + &(&g("alpha") * &g(&format!("{c}2")));
        out.push((format!("μγ {c}1 = ω κ({c}2) + α {c}2"), lhs, rhs));
    }
    Ok(out)
}

/// [`coordinate_relations`] decided in the conjugates algebra.
pub fn coordinate_claims() -> Result<Vec<Claim>, NcError> {
    let rs = conjugates()?;
    Ok(coordinate_relations(&rs)?
        .into_iter()
        .map(|(l, lhs, rhs)| claim(&rs, l, &lhs, &rhs))
        .collect())
}

/// `ρ_i = v̄²γ⁻¹x^(2)`, `Θ_1 = q⁻¹vγ⁻¹κ(x^(2))` (and the y analogues) and
/// their stars, as elements of the extended algebra, keyed by the
/// generator names of [`rho_theta`].
pub fn rho_theta_images(ext: &ExactSystem) -> Result<Vec<(String, P)>, NcError> {
    let mut out = Vec::new();
    for (i, c) in [("1", "x2"), ("2", "y2")] {
        let rho = ext.word(&["vbar", "vbar", "gamma^-1", c]);
        let kc = format!("k{c}");
        let theta = ext.word(&["v", "gamma^-1", &kc]).scale(&q(-4));
        out.push((format!("rho{i}*"), ext.star(&rho)?));
        out.push((format!("rho{i}"), rho));
        out.push((format!("theta{i}*"), ext.star(&theta)?));
        out.push((format!("theta{i}"), theta));
    }
    for n in ["gamma", "gamma*", "alpha", "alpha*"] {
        out.push((n.to_string(), ext.g(n)));
    }
    Ok(out)
}

/// Each printed ρ/Θ relation (and its star) checked in the extended
/// algebra.
pub fn rho_theta_claims() -> Result<Vec<Claim>, NcError> {
    let ext = extended()?;
    let rt = rho_theta()?;
    let images = rho_theta_images(&ext)?;
    let image = |i: u16| {
        let name = &rt.generators()[i as usize].name;
        images
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p.clone())
            .expect("every letter has an image")
    };
    let g = |n: &str| rt.g(n);
    let mut out = Vec::new();
    for (label, lhs, rhs) in rho_theta_printed(&g) {
        let rel = &lhs - &rhs;
        for (l, r) in [
            (label.clone(), rel.clone()),
            (format!("{label} (star)"), rt.star(&rel)?),
        ] {
            out.push(Claim {
                holds: ext.normal_form(&r.substitute(&image)).is_zero(),
                label: l,
            });
        }
    }
    Ok(out)
}
