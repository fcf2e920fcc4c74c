use isoq::nc::{algebra, ExactSystem};
use isoq::{ExactPoly, Scalar, Signature};
use num_traits::One;
use proptest::prelude::*;
use std::sync::OnceLock;

fn su2() -> &'static ExactSystem {
    static S: OnceLock<ExactSystem> = OnceLock::new();
    S.get_or_init(|| algebra("su2mu", Signature::Euclid).unwrap())
}

fn coeff() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -2i64..=2).prop_map(|(n, k)| Scalar::int(n) * Scalar::q_pow(k))
}

/// Small polynomials in `α, α*, γ, γ*` of degree at most three.
fn poly() -> impl Strategy<Value = ExactPoly> {
    let names = ["alpha", "alpha*", "gamma", "gamma*"];
    let word = proptest::collection::vec(0usize..4, 0..=3);
    proptest::collection::vec((coeff(), word), 1..4).prop_map(move |ts| {
        let rs = su2();
        let mut p = ExactPoly::zero();
        for (c, w) in ts {
            let ns: Vec<&str> = w.iter().map(|&i| names[i]).collect();
            p.add_scaled(&rs.word(&ns), &c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent(p in poly()) {
        let rs = su2();
        let nf = rs.normal_form(&p);
        prop_assert_eq!(rs.normal_form(&nf), nf);
    }

    #[test]
    fn normal_form_is_linear(p in poly(), r in poly(), c in coeff()) {
        let rs = su2();
        let mut lhs = p.clone();
        lhs.add_scaled(&r, &c);
        let mut rhs = rs.normal_form(&p);
        rhs.add_scaled(&rs.normal_form(&r), &c);
        prop_assert_eq!(rs.normal_form(&lhs), rhs);
    }

    #[test]
    fn normal_form_respects_products(p in poly(), r in poly()) {
        let rs = su2();
        let direct = rs.normal_form(&(&p * &r));
        let staged = rs.normal_form(&(&rs.normal_form(&p) * &rs.normal_form(&r)));
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn star_is_an_involution_compatible_with_reduction(p in poly()) {
        let rs = su2();
        let st = rs.star(&p).unwrap();
        prop_assert_eq!(rs.star(&st).unwrap(), p.clone());
        prop_assert_eq!(rs.normal_form(&rs.star(&rs.normal_form(&p)).unwrap()), rs.normal_form(&st));
    }
}

#[test]
fn unitarity_reduces_to_one() {
    let rs = su2();
    let mut p = rs.word(&["alpha*", "alpha"]);
    p.add_scaled(&rs.word(&["gamma*", "gamma"]), &Scalar::one());
    assert_eq!(rs.normal_form(&p), ExactPoly::one());
}
