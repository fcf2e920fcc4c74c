//! Relations scanned in the representation, written over the
//! representation alphabet with exact coefficients, together with the
//! verdict of the exact algebra where one exists.

use super::operator::REP_GENERATORS;
use super::RepError;
use crate::embedding::{build_z, covariance_relations, embed_matrix, m_matrix, plane_relations, rtt_relations};
use crate::nc::algebras::{
    conjugates, coordinate_relations, extended, kappa, rho_theta_images, rho_theta_printed, su_printed,
};
use crate::nc::{ExactSystem, NcPoly, Reducer, SystemBuilder};
use crate::scalar::{Scalar, StarMode};
use crate::tensor::{constant, Signature};
use num_traits::One;
use std::collections::BTreeSet;

type P = NcPoly<Scalar>;

/// Where a relation comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// A relation as printed with the representation.
    Printed,
    /// Commutativity of two elements of the maximal commuting set 𝒟.
    Commutant,
    /// A rule of a derived rewriting system.
    Derived,
    /// An identity of reconstructed operators (x, κ(x), M, z).
    Reconstructed,
}

#[derive(Debug, Clone)]
pub struct Relation {
    /// Unique id of the relation.
    pub id: String,
    /// Check id the relation reports under; families share one.
    pub check: String,
    pub label: String,
    pub anchor: &'static str,
    pub kind: Kind,
    pub lhs: P,
    pub rhs: P,
    /// Whether `lhs − rhs` has zero normal form in the exact algebra.
    pub exact: Option<bool>,
}

impl Relation {
    /// Whether any monomial uses the given letter.
    pub fn uses(&self, letter: u16) -> bool {
        self.lhs
            .terms()
            .chain(self.rhs.terms())
            .any(|(w, _)| w.contains(&letter))
    }
}

mod anchor {
    pub const SU: &str = "relations of SU_mu(2) in the representation";
    pub const COORD: &str = "second coordinate has the following relations; antipode images; mixed table";
    pub const RHO_THETA: &str = "all algebraic relations with coordinate functions rho_i, Theta_i";
    pub const COMMUTANT: &str = "maximal real subalgebra D of commuting elements";
    pub const DERIVED: &str = "derived coordinate algebra";
    pub const RECON: &str = "rho_1 = vbar^2 gamma^-1 x2, Theta_1 = q^-1 v gamma^-1 kappa(x2)";
    pub const PLANE: &str = "A z z vanishes";
    pub const COV: &str = "covariance x M = gamma R M x, gamma = 1 for SO";
    pub const RTT: &str = "RTT relations for the embedded vector matrix";
    pub const ZZBAR: &str = "z - zbar relation, we find n = 2/3";
}

/// Short ascii form of a relation label for use in ids.
pub fn slug(label: &str) -> String {
    let mut s = String::new();
    for c in label.chars() {
        let t: &str = match c {
            'a'..='z' | '0'..='9' => {
                s.push(c);
                continue;
            }
            'A'..='Z' => {
                s.push(c.to_ascii_lowercase());
                continue;
            }
            'α' => "alpha",
            'γ' => "gamma",
            'κ' => "k",
            'μ' => "mu",
            'ω' => "omega",
            '*' => "s",
            '⁻' | '-' | '−' => "m",
            '¹' => "1",
            '²' => "2",
            '³' => "3",
            '=' => "_eq_",
            '+' => "_p_",
            _ => "_",
        };
        s.push_str(t);
    }
    let mut out = String::new();
    for part in s.split('_').filter(|p| !p.is_empty()) {
        if !out.is_empty() {
            out.push('_');
        }
        out.push_str(part);
    }
    out
}

/// The free *-algebra on the representation generators.
pub fn rep_alphabet() -> ExactSystem {
    let mut b = SystemBuilder::new("rep", StarMode::RealPositiveQ, Scalar::one());
    for (n, s) in REP_GENERATORS {
        b.gen(n, Some(s), 1).expect("distinct names");
    }
    b.build().expect("no relations to orient")
}

/// Images of coordinate-algebra letters as representation polynomials:
/// `x² = γv̄⁻²ρ₁`, `κ(x²) = qγv̄Θ₁`, `x¹ = μ⁻¹γ⁻¹(ωκ(x²) + αx²)`, and
/// conjugates as stars.
pub struct Images {
    rep: ExactSystem,
}

impl Images {
    pub fn new() -> Images {
        Images { rep: rep_alphabet() }
    }

    pub fn alphabet(&self) -> &ExactSystem {
        &self.rep
    }

    pub fn image(&self, name: &str) -> Result<P, RepError> {
        let r = &self.rep;
        let conj = |p: P| r.star(&p).expect("rep alphabet is star-closed");
        let second = |c: &str| match c {
            "x" => r.word(&["gamma", "v", "v", "rho1"]),
            _ => r.word(&["gamma", "v", "v", "rho2"]),
        };
        let kappa2 = |c: &str| match c {
            "x" => r.word(&["gamma", "vbar", "theta1"]).scale(&Scalar::q()),
            _ => r.word(&["gamma", "vbar", "theta2"]).scale(&Scalar::q()),
        };
        let first = |c: &str| {
            let inner = &(&r.word(&["v", "v", "v"]) * &kappa2(c)) + &(&r.g("alpha") * &second(c));
            (&r.g("gamma^-1") * &inner).scale(&Scalar::q_pow(-2))
        };
        Ok(match name {
            n if r.has(n) => r.g(n),
            "x2" | "y2" => second(&name[..1]),
            "x1" | "y1" => first(&name[..1]),
            "xbar2" | "ybar2" => conj(second(&name[..1])),
            "xbar1" | "ybar1" => conj(first(&name[..1])),
            "kx2" | "ky2" => kappa2(&name[1..2]),
            "kx2*" | "ky2*" => conj(kappa2(&name[1..2])),
            "omega" => r.word(&["v", "v", "v"]),
            _ => return Err(RepError::UnknownGenerator(name.to_string())),
        })
    }

    /// Pushes a polynomial over `src` into the representation alphabet.
    pub fn map(&self, src: &ExactSystem, p: &P) -> Result<P, RepError> {
        let imgs: Vec<P> = src
            .generators()
            .iter()
            .map(|g| self.image(&g.name))
            .collect::<Result<_, _>>()?;
        Ok(p.substitute(&|i| imgs[i as usize].clone()))
    }
}

impl Default for Images {
    fn default() -> Self {
        Images::new()
    }
}

/// Operators that [`super::reconstruct`] can build, as representation
/// polynomials.
pub fn reconstructed(images: &Images, name: &str) -> Result<P, RepError> {
    let rep = images.alphabet();
    if let Some(ij) = name.strip_prefix("M_") {
        let idx: Vec<usize> = ij.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect();
        if idx.len() != 2 || !(1..=3).contains(&idx[0]) || !(1..=3).contains(&idx[1]) {
            return Err(RepError::UnknownGenerator(name.to_string()));
        }
        let m = embed_matrix(&m_matrix(rep, Signature::Euclid), Signature::Euclid);
        return Ok(m[idx[0] - 1][idx[1] - 1].clone());
    }
    if let Some(i) = name.strip_prefix("z_") {
        let i: usize = i.parse().map_err(|_| RepError::UnknownGenerator(name.to_string()))?;
        if !(1..=3).contains(&i) {
            return Err(RepError::UnknownGenerator(name.to_string()));
        }
        let conj = conjugates()?;
        return images.map(&conj, &build_z(&conj, Signature::Euclid, "x", 2)[i - 1]);
    }
    match name {
        "x2" | "y2" | "kx2" | "ky2" | "x1" | "y1" | "omega" => images.image(name),
        _ => Err(RepError::UnknownGenerator(name.to_string())),
    }
}

/// Every relation the representation suite scans.
#[derive(Debug, Clone)]
pub struct Catalog {
    rep: ExactSystem,
    pub relations: Vec<Relation>,
}

impl Catalog {
    pub fn alphabet(&self) -> &ExactSystem {
        &self.rep
    }

    pub fn build() -> Result<Catalog, RepError> {
        let images = Images::new();
        let rep = images.alphabet().clone();
        let conj = conjugates()?;
        let ext = extended()?;
        let mut cat = Catalog {
            rep: rep.clone(),
            relations: Vec::new(),
        };
        let mut seen = BTreeSet::new();
        let mut push = |cat: &mut Catalog,
                        check: String,
                        label: String,
                        anchor: &'static str,
                        kind: Kind,
                        lhs: P,
                        rhs: P,
                        exact: Option<bool>| {
            let mut id = check.clone();
            if seen.contains(&id) || matches!(kind, Kind::Derived | Kind::Reconstructed) {
                id = format!("{check}.{}", slug(&label));
            }
            let base = id.clone();
            let mut k = 2;
            while !seen.insert(id.clone()) {
                id = format!("{base}.{k}");
                k += 1;
            }
            cat.relations.push(Relation {
                id,
                check,
                label,
                anchor,
                kind,
                lhs,
                rhs,
                exact,
            });
        };

        // Printed SU list and stars; these hold in every algebra above SU.
        for (label, lhs, rhs) in su_printed(&|n| rep.g(n), false) {
            let (sl, sr) = (rep.star(&lhs)?, rep.star(&rhs)?);
            push(
                &mut cat,
                format!("rep.rel.su.{}", slug(&label)),
                label.clone(),
                anchor::SU,
                Kind::Printed,
                lhs,
                rhs,
                Some(true),
            );
            let l = format!("{label} (star)");
            push(
                &mut cat,
                format!("rep.rel.su.{}", slug(&l)),
                l,
                anchor::SU,
                Kind::Printed,
                sl,
                sr,
                Some(true),
            );
        }

        // Printed coordinate relations, decided in the conjugates algebra.
        let mut red = Reducer::new(&conj);
        for (label, lhs, rhs) in coordinate_relations(&conj)? {
            let holds = red.normal_form(&(&lhs - &rhs)).is_zero();
            let (l, r) = (images.map(&conj, &lhs)?, images.map(&conj, &rhs)?);
            push(
                &mut cat,
                format!("rep.rel.coord.{}", slug(&label)),
                label,
                anchor::COORD,
                Kind::Printed,
                l,
                r,
                Some(holds),
            );
        }

        // Printed ρ/Θ relations and stars, decided in the extended algebra.
        let rt_images = rho_theta_images(&ext)?;
        // ρ_i, Θ_i and stars by their definitions, every other letter as itself.
        let to_ext: Vec<P> = rep
            .generators()
            .iter()
            .map(|g| match rt_images.iter().find(|(n, _)| *n == g.name) {
                Some((_, p)) => Ok(p.clone()),
                None => ext.index_of(&g.name).map(NcPoly::gen),
            })
            .collect::<Result<_, _>>()?;
        let in_ext = |p: &P| p.substitute(&|i| to_ext[i as usize].clone());
        let mut ext_red = Reducer::new(&ext);
        for (label, lhs, rhs) in rho_theta_printed(&|n| rep.g(n)) {
            let star = (label.clone() + " (star)", rep.star(&lhs)?, rep.star(&rhs)?);
            for (l, a, b) in [(label.clone(), lhs.clone(), rhs.clone()), star] {
                let holds = ext_red.normal_form(&in_ext(&(&a - &b))).is_zero();
                push(
                    &mut cat,
                    format!("rep.rel.rhotheta.{}", slug(&l)),
                    l,
                    anchor::RHO_THETA,
                    Kind::Printed,
                    a,
                    b,
                    Some(holds),
                );
            }
        }

        // Pairwise commutativity of 𝒟, decided in the extended algebra.
        let d: [(&str, [&str; 2]); 6] = [
            ("aas", ["alpha", "alpha*"]),
            ("ggs", ["gamma", "gamma*"]),
            ("r1r1s", ["rho1", "rho1*"]),
            ("t1t1s", ["theta1", "theta1*"]),
            ("t2t2s", ["theta2", "theta2*"]),
            ("v", ["v", ""]),
        ];
        let elem = |pair: &[&str; 2]| {
            if pair[1].is_empty() {
                rep.g(pair[0])
            } else {
                rep.word(pair)
            }
        };
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let (a, b) = (elem(&d[i].1), elem(&d[j].1));
                let (ab, ba) = (&a * &b, &b * &a);
                let holds = ext_red.normal_form(&in_ext(&(&ab - &ba))).is_zero();
                let label = format!("[{}, {}] = 0", d[i].0, d[j].0);
                push(
                    &mut cat,
                    format!("rep.dcomm.{}.{}", d[i].0, d[j].0),
                    label,
                    anchor::COMMUTANT,
                    Kind::Commutant,
                    ab,
                    ba,
                    Some(holds),
                );
            }
        }

        // Every rule of the derived algebras.
        for (sys, tag) in [(&conj, "conj"), (&ext, "ext")] {
            for r in sys.rules() {
                let lhs = images.map(sys, &NcPoly::term(Scalar::one(), r.lhs.clone()))?;
                let rhs = images.map(sys, &r.rhs)?;
                push(
                    &mut cat,
                    format!("rep.derived.{tag}"),
                    r.label.clone(),
                    anchor::DERIVED,
                    Kind::Derived,
                    lhs,
                    rhs,
                    Some(true),
                );
            }
        }

        // Round trips of the definitions of ρ_i and Θ_i.
        for (i, c) in [("1", "x"), ("2", "y")] {
            let rho = &rep.word(&["vbar", "vbar", "gamma^-1"]) * &images.image(&format!("{c}2"))?;
            let kc = images.map(&conj, &kappa(&conj, c, 2))?;
            let theta = (&rep.word(&["v", "gamma^-1"]) * &kc).scale(&Scalar::q_pow(-4));
            let (rl, tl) = (
                format!("vbar^2 gamma^-1 {c}2 = rho{i}"),
                format!("q^-1 v gamma^-1 k({c}2) = theta{i}"),
            );
            push(
                &mut cat,
                "rep.recon.definitions".into(),
                rl,
                anchor::RECON,
                Kind::Reconstructed,
                rho,
                rep.g(&format!("rho{i}")),
                None,
            );
            push(
                &mut cat,
                "rep.recon.definitions".into(),
                tl,
                anchor::RECON,
                Kind::Reconstructed,
                theta,
                rep.g(&format!("theta{i}")),
                None,
            );
        }

        // Embedding identities evaluated on reconstructed operators.
        let sig = Signature::Euclid;
        let z = build_z(&conj, sig, "x", 2);
        let m_conj = embed_matrix(&m_matrix(&conj, sig), sig);
        let mut recon =
            |cat: &mut Catalog, check: &str, anchor: &'static str, rels: Vec<(String, P)>| -> Result<(), RepError> {
                for (label, p) in rels {
                    if p.is_zero() {
                        continue;
                    }
                    let holds = red.normal_form(&p).is_zero();
                    let img = images.map(&conj, &p)?;
                    push(
                        cat,
                        check.to_string(),
                        label,
                        anchor,
                        Kind::Reconstructed,
                        img,
                        P::zero(),
                        Some(holds),
                    );
                }
                Ok(())
            };
        let projs = constant("projA_so", sig)?;
        recon(
            &mut cat,
            "rep.recon.plane",
            anchor::PLANE,
            plane_relations(&projs, &z)
                .into_iter()
                .map(|(i, p)| (format!("Azz {i:?}"), p))
                .collect(),
        )?;
        let rso = constant("rhat_so", sig)?;
        recon(
            &mut cat,
            "rep.recon.cov",
            anchor::COV,
            covariance_relations(&rso, &z, &m_conj)
                .into_iter()
                .map(|(i, p)| (format!("zM {i:?}"), p))
                .collect(),
        )?;
        recon(
            &mut cat,
            "rep.recon.rtt",
            anchor::RTT,
            rtt_relations(&m_conj, &rso)
                .into_iter()
                .map(|(i, p)| (format!("RMM {i:?}"), p))
                .collect(),
        )?;
        let zb: Vec<P> = z.iter().map(|p| conj.star(p)).collect::<Result<_, _>>()?;
        let ri = constant("rhat_so_inv", sig)?;
        let mut zz = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let mut res = &z[i] * &zb[j];
                for a in 0..3 {
                    for b in 0..3 {
                        let c = ri.get(&[a, i, b, j]);
                        if !num_traits::Zero::is_zero(c) {
                            res.add_scaled(&(&zb[a] * &z[b]), &-(c.clone() * Scalar::q_pow(-4)));
                        }
                    }
                }
                zz.push((format!("z zbar [{i}, {j}]"), res));
            }
        }
        recon(&mut cat, "rep.recon.zzbar", anchor::ZZBAR, zz)?;
        Ok(cat)
    }
}
