use isoq::{Scalar, StarMode};
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Sums of `c · Q^k · s^e · i^f / (1 + Q^j)` with small integer data.
fn scalar() -> impl Strategy<Value = Scalar> {
    let term =
        (-4i64..=4, 1i64..=3, -5i64..=5, any::<bool>(), any::<bool>(), 0i64..=3).prop_map(|(n, d, k, s, i, j)| {
            let mut t = Scalar::ratio(n, d) * Scalar::q_pow(k);
            if s {
                t = t * Scalar::s();
            }
            if i {
                t = t * Scalar::i();
            }
            if j > 0 {
                t = t.checked_div(&(Scalar::one() + Scalar::q_pow(j))).unwrap();
            }
            t
        });
    proptest::collection::vec(term, 1..4).prop_map(|ts| ts.into_iter().fold(Scalar::zero(), |a, t| a + t))
}

fn mode() -> impl Strategy<Value = StarMode> {
    prop_oneof![Just(StarMode::RealPositiveQ), Just(StarMode::ModulusOneQ)]
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), Scalar::zero());
    }

    #[test]
    fn nonzero_elements_are_invertible(a in scalar()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert_eq!(a * inv, Scalar::one());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in scalar(), b in scalar(), m in mode()) {
        prop_assert_eq!(a.conjugate(m).conjugate(m), a.clone());
        prop_assert_eq!((a.clone() * b.clone()).conjugate(m), a.conjugate(m) * b.conjugate(m));
        prop_assert_eq!((a.clone() + b.clone()).conjugate(m), a.conjugate(m) + b.conjugate(m));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), big_q in 0.3f64..0.99) {
        let (x, y) = (a.eval(big_q).unwrap(), b.eval(big_q).unwrap());
        prop_assert!(close((a.clone() * b.clone()).eval(big_q).unwrap(), x * y));
        prop_assert!(close((a + b).eval(big_q).unwrap(), x + y));
    }

    #[test]
    fn conjugation_matches_complex_conjugation(a in scalar(), big_q in 0.3f64..0.99, theta in 0.01f64..0.3) {
        let v = a.eval(big_q).unwrap();
        prop_assert!(close(a.conjugate(StarMode::RealPositiveQ).eval(big_q).unwrap(), v.conj()));
        let z = Complex64::from_polar(1.0, theta);
        let w = a.eval_at(z).unwrap();
        prop_assert!(close(a.conjugate(StarMode::ModulusOneQ).eval_at(z).unwrap(), w.conj()));
    }

    #[test]
    fn display_parses_back(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn s_squares_to_one_plus_q() {
    assert_eq!(Scalar::s() * Scalar::s(), Scalar::one() + Scalar::q());
    assert_eq!(Scalar::mu() * Scalar::mu(), Scalar::q());
}
