//! The rewriting checks of the verification suite.

use super::algebras::{
    algebra, coordinate_claims, rho_theta_claims, solve_xy_coupling, Claim, XyAnsatz, ALGEBRA_NAMES,
};
use super::system::NcError;
use crate::check::CheckOutcome;
use crate::scalar::Scalar;
use crate::tensor::Signature;
use std::time::Instant;

mod anchor {
    pub const CONFLUENCE: &str = "relations are consistent: all overlaps resolve";
    pub const CENTRAL: &str = "epsilon_{nu mu} x^nu y^mu is central";
    pub const STAR: &str = "the relations are compatible with the *-structure";
    pub const COORD: &str = "second coordinate has the following relations; antipode images; mixed table";
    pub const RHO_THETA: &str = "all algebraic relations with coordinate functions rho_i, Theta_i";
}

fn run(
    out: &mut Vec<CheckOutcome>,
    id: &str,
    anchor: &str,
    expect_fail: bool,
    f: impl FnOnce() -> Result<(usize, usize, Option<String>), NcError>,
) {
    let start = Instant::now();
    match f() {
        Ok((fails, total, note)) => {
            let mut o = CheckOutcome::exact(id, "nc", anchor, fails, total, expect_fail, start);
            if let (Some(n), Some(d)) = (note, o.detail.as_mut()) {
                d.push_str("; ");
                d.push_str(&n);
            }
            out.push(o);
        }
        Err(e) => out.push(CheckOutcome::error(id, "nc", anchor, e.to_string(), None, start)),
    }
}

fn claims(cs: Vec<Claim>) -> (usize, usize, Option<String>) {
    let failing: Vec<&str> = cs.iter().filter(|c| !c.holds).map(|c| c.label.as_str()).collect();
    let note = (!failing.is_empty()).then(|| format!("not implied: {}", failing.join(" | ")));
    (failing.len(), cs.len(), note)
}

/// Names of the shipped rewriting systems for a signature (without the
/// corrupted control).
pub fn shipped_algebras(sig: Signature) -> Vec<&'static str> {
    ALGEBRA_NAMES
        .iter()
        .copied()
        .filter(|n| *n != "corrupted" && algebra_exists(n, sig))
        .collect()
}

fn algebra_exists(name: &str, sig: Signature) -> bool {
    sig == Signature::Euclid || matches!(name, "su2mu" | "plane" | "scaling" | "spinors")
}

/// Confluence of every shipped system (and the corrupted control),
/// star compatibility, the centrality solve and the printed relation
/// tables checked against the derived algebras.
pub fn suite(sig: Signature) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for name in shipped_algebras(sig) {
        run(
            &mut out,
            &format!("nc.confluence.{name}"),
            anchor::CONFLUENCE,
            false,
            || {
                let rs = algebra(name, sig)?;
                Ok((rs.overlap_check(3).len(), rs.rules().len(), None))
            },
        );
        // euclidean coordinates without their conjugates carry no star
        if algebra(name, sig).map_or(true, |rs| rs.is_star_closed()) {
            run(&mut out, &format!("nc.star.{name}"), anchor::STAR, false, || {
                let rs = algebra(name, sig)?;
                Ok((rs.star_violations()?.len(), rs.rules().len(), None))
            });
        }
    }
    if sig == Signature::Euclid {
        run(
            &mut out,
            "nc.confluence.corrupted.rejected",
            anchor::CONFLUENCE,
            true,
            || {
                let rs = algebra("corrupted", sig)?;
                Ok((rs.overlap_check(3).len(), rs.rules().len(), None))
            },
        );
    }
    run(&mut out, "nc.centrality.lambda", anchor::CENTRAL, false, || {
        let c = solve_xy_coupling(sig, XyAnsatz::RhatInverse)?;
        let ok = c.x2y2_factor.as_ref() == Some(&Scalar::mu());
        Ok((
            usize::from(!ok),
            1,
            Some(format!(
                "λ = {}, x2 y2 = ({}) y2 x2",
                c.lambda,
                c.x2y2_factor.map_or("none".into(), |f| f.to_string())
            )),
        ))
    });
    run(
        &mut out,
        "nc.centrality.rhat.rejected",
        anchor::CENTRAL,
        true,
        || match solve_xy_coupling(sig, XyAnsatz::Rhat) {
            Ok(c) => Ok((
                usize::from(c.x2y2_factor.as_ref() != Some(&Scalar::mu())),
                1,
                Some(format!("λ = {}", c.lambda)),
            )),
            Err(NcError::NoSolution(m)) => Ok((1, 1, Some(m))),
            Err(e) => Err(e),
        },
    );
    if sig == Signature::Euclid {
        run(&mut out, "nc.claims.coord", anchor::COORD, false, || {
            Ok(claims(coordinate_claims()?))
        });
        run(&mut out, "nc.claims.rhotheta", anchor::RHO_THETA, false, || {
            Ok(claims(rho_theta_claims()?))
        });
    }
    out
}
