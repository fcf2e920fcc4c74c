use isoq::Scalar;
use proptest::prelude::*;
use qvt::ast::{Expr, Factor, Pos, Script, Sign, Stmt, Term};
use qvt::parse;

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,4}".prop_filter("reserved", |n| !qvt::parse::RESERVED.contains(&n.as_str()))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..4, -6i64..7, 0usize..4).prop_map(|(n, k, atom)| {
        let base = match atom {
            0 => Scalar::q_pow(k),
            1 => Scalar::s() * Scalar::q_pow(k),
            2 => Scalar::i() + Scalar::q_pow(k),
            _ => (Scalar::int(1) + Scalar::q_pow(k)).inv().unwrap(),
        };
        Scalar::int(n) * base + Scalar::ratio(1, 2)
    })
}

fn tensor_factor() -> impl Strategy<Value = Factor> {
    (
        name(),
        prop::collection::vec(prop::sample::select(vec!["a", "b", "c", "i", "j", "k2"]), 1..4),
    )
        .prop_map(|(name, ix)| Factor::Tensor {
            name,
            indices: ix.into_iter().map(String::from).collect(),
            pos: Pos::default(),
        })
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

/// Terms with at least one factor; groups nest one level.
fn expr(depth: u32) -> BoxedStrategy<Expr> {
    let factor: BoxedStrategy<Factor> = if depth == 0 {
        tensor_factor().boxed()
    } else {
        prop_oneof![3 => tensor_factor(), 1 => expr(depth - 1).prop_map(Factor::Group)].boxed()
    };
    let term = (prop::option::of(scalar()), prop::collection::vec(factor, 1..4))
        .prop_map(|(coeff, factors)| Term { coeff, factors });
    let scalar_term = scalar().prop_map(|c| Term {
        coeff: Some(c),
        factors: vec![],
    });
    let any_term = if depth == 0 {
        term.boxed()
    } else {
        prop_oneof![4 => term, 1 => scalar_term].boxed()
    };
    prop::collection::vec((sign(), any_term), 1..4)
        .prop_map(|terms| Expr { terms })
        .boxed()
}

fn stmt() -> impl Strategy<Value = Stmt> {
    prop_oneof![
        (expr(1), expr(1)).prop_map(|(lhs, rhs)| Stmt::Check {
            lhs,
            rhs,
            pos: Pos::default()
        }),
        (name(), expr(1)).prop_map(|(name, expr)| Stmt::Let {
            name,
            expr,
            pos: Pos::default()
        }),
    ]
}

fn index_counts_ok(e: &Expr) -> bool {
    e.terms.iter().all(|(_, t)| {
        let ix = t.index_occurrences();
        ix.iter().all(|n| ix.iter().filter(|m| *m == n).count() <= 2)
            && t.factors.iter().all(|f| match f {
                Factor::Group(g) => index_counts_ok(g),
                _ => true,
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn parse_inverts_render(stmts in prop::collection::vec(stmt(), 0..5)) {
        let ok = stmts.iter().all(|s| match s {
            Stmt::Check { lhs, rhs, .. } => index_counts_ok(lhs) && index_counts_ok(rhs),
            Stmt::Let { expr, .. } => index_counts_ok(expr),
        });
        prop_assume!(ok);
        let script = Script { stmts };
        let text = script.to_string();
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, script);
    }
}
