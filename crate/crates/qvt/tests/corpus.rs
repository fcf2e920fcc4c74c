use isoq::Signature;
use qvt::ast::{Expr, Factor, Stmt};
use qvt::{load, parse, residuals_exact, residuals_numeric, run, Backend, Registry};
use std::path::PathBuf;

fn corpus() -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut out: Vec<(PathBuf, String)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "qvt"))
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(out.len() >= 6, "corpus is missing scripts");
    out
}

#[test]
fn corpus_passes_on_the_exact_backend() {
    for sig in [Signature::Euclid, Signature::Lorentz] {
        let reg = Registry::new(sig);
        for (path, text) in corpus() {
            let checked = load(&text, &reg).unwrap_or_else(|e| panic!("{path:?}: {e}"));
            let results = run(&checked, &reg, Backend::Exact, 1e-10).unwrap();
            assert!(!results.is_empty());
            for r in results {
                assert!(r.passed, "{sig:?} {path:?} check {}: {}", r.index, r.statement);
                assert_eq!(r.residual, None);
            }
        }
    }
}

#[test]
fn corpus_render_round_trips() {
    for (path, text) in corpus() {
        let s = parse(&text).unwrap();
        assert_eq!(parse(&s.to_string()).unwrap(), s, "{path:?}");
    }
}

#[test]
fn numeric_backend_agrees_with_the_evaluated_exact_residual() {
    let reg = Registry::new(Signature::Euclid);
    for (path, text) in corpus() {
        let checked = load(&text, &reg).unwrap();
        let exact = residuals_exact(&checked, &reg).unwrap();
        for q in isoq::rep::DEFAULT_Q {
            let num = residuals_numeric(&checked, &reg, q).unwrap();
            for (e, n) in exact.iter().zip(&num) {
                let d = e.tensor.eval(q.powf(0.25)).unwrap().sub(&n.tensor).max_abs() / n.scale;
                assert!(d < 1e-12, "{path:?} q={q}: {d}");
                assert!(n.relative() < 1e-12, "{path:?} q={q}");
            }
        }
    }
}

fn reverse_factors(e: &mut Expr) {
    for (_, t) in &mut e.terms {
        t.factors.reverse();
        for f in &mut t.factors {
            if let Factor::Group(g) = f {
                reverse_factors(g);
            }
        }
    }
}

#[test]
fn evaluation_does_not_depend_on_factor_order() {
    let reg = Registry::new(Signature::Euclid);
    for (path, text) in corpus() {
        let s = parse(&text).unwrap();
        let mut r = s.clone();
        for st in &mut r.stmts {
            if let Stmt::Check { lhs, rhs, .. } = st {
                reverse_factors(lhs);
                reverse_factors(rhs);
            }
        }
        let a = residuals_exact(&qvt::typecheck(&s, &reg).unwrap(), &reg).unwrap();
        let b = residuals_exact(&qvt::typecheck(&r, &reg).unwrap(), &reg).unwrap();
        let checks = s.stmts.iter().zip(&r.stmts).filter_map(|(x, y)| match (x, y) {
            (Stmt::Check { lhs: l1, .. }, Stmt::Check { lhs: l2, .. }) => Some((l1.free_names(), l2.free_names())),
            _ => None,
        });
        for ((ta, tb), (na, nb)) in a.iter().zip(&b).zip(checks) {
            let perm: Vec<usize> = na.iter().map(|n| nb.iter().position(|m| m == n).unwrap()).collect();
            assert_eq!(ta.tensor, tb.tensor.permute(&perm), "{path:?}");
        }
    }
}

#[test]
fn broken_identities_fail() {
    let reg = Registry::new(Signature::Euclid);
    let c = load(
        "check rhat_so[i,j,k,l] == q * projS_so[i,j,k,l] + q^-1 * projA_so[i,j,k,l] + q^-2 * projT[i,j,k,l];",
        &reg,
    )
    .unwrap();
    assert!(!run(&c, &reg, Backend::Exact, 1e-10).unwrap()[0].passed);
    let r = run(&c, &reg, Backend::Numeric { q: 0.5 }, 1e-10).unwrap();
    assert!(!r[0].passed && r[0].residual.unwrap() > 1e-3);
}
