//! Acceptance criteria, one line each.
//!
//! A criterion that is known to be unattainable is still run as stated
//! and reported `FAIL`; the run only aborts when a criterion fails in a way
//! that does not match its recorded analysis.

use isoq::nc::shipped_algebras;
use isoq::rep::{self, BasisWindow, Catalog, Convention, Kind, RelationResult, ScanConfig, DEFAULT_Q};
use isoq::tensor::{
    self, characteristic_residual, constant, eigenprojectors, extract_metric, qybe_residual, so_eigenvalues,
};
use isoq::{embedding, nc, CheckOutcome, Signature};
use qvt::Registry;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

const SIGS: [Signature; 2] = [Signature::Euclid, Signature::Lorentz];
const TOL: f64 = 1e-10;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
    /// For a red criterion: whether the failure is the recorded one.
    documented: bool,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
            documented: false,
        }
    }
}

fn all_pass(out: &[CheckOutcome], ids: impl Fn(&str) -> bool) -> (bool, Vec<String>) {
    let failing: Vec<String> = out
        .iter()
        .filter(|o| ids(&o.id) && !o.passed)
        .map(|o| o.id.clone())
        .collect();
    (failing.is_empty(), failing)
}

fn has(out: &[CheckOutcome], id: &str) -> bool {
    out.iter().any(|o| o.id == id && o.passed)
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "qvt"))
        .collect();
    v.sort();
    v
}

fn qybe() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, sig) in [
        ("rhat_su2", Signature::Euclid),
        ("rhat_so", Signature::Euclid),
        ("rhat_so", Signature::Lorentz),
    ] {
        let start = Instant::now();
        let zero = qybe_residual(&constant(name, sig).unwrap()).is_zero();
        let t = start.elapsed();
        ok &= zero && t < Duration::from_secs(60);
        notes.push(format!(
            "{name}/{} {}",
            sig.as_str(),
            if zero {
                format!("zero in {t:.2?}")
            } else {
                "NONZERO".into()
            }
        ));
    }
    Verdict::new(ok, notes.join(", "))
}

fn reconstruction() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for sig in SIGS {
        let r = constant("rhat_so", sig).unwrap();
        let eig = so_eigenvalues();
        ok &= characteristic_residual(&r, &eig).is_zero();
        let projs = eigenprojectors(&r, &eig).unwrap();
        let (fails, total) = tensor::projector_family_failures(&r, &projs, &eig);
        ok &= fails == 0;
        let metric = extract_metric(&projs[2]);
        ok &= metric.as_ref().is_ok_and(|m| m.transport_scale.is_some());
        let out = tensor::suite(sig, &DEFAULT_Q);
        let (mult, bad) = all_pass(&out, |id| id.starts_with("tensor.mult."));
        ok &= mult && out.iter().filter(|o| o.id.starts_with("tensor.mult.")).count() == DEFAULT_Q.len();
        notes.push(format!("{}: cubic zero, {fails} of {total} projector identities failing, T rank 1, multiplicity checks failing {bad:?}", sig.as_str()));
    }
    Verdict::new(
        ok,
        format!("{}; multiplicities (5,3,1) at q = 0.2, 0.5, 0.9", notes.join("; ")),
    )
}

fn projectors() -> Verdict {
    let out = tensor::suite(Signature::Euclid, &[]);
    let ok = has(&out, "tensor.projS.cg") && has(&out, "tensor.projA.eps");
    Verdict::new(ok, "S = sum_i c_i (x) c_i and A = -eps eps / (mu + mu^-1) exactly")
}

fn embedding_theorems() -> Verdict {
    let start = Instant::now();
    let out = embedding::suite(Signature::Euclid);
    let t = start.elapsed();
    let (ok, failing) = all_pass(&out, |_| true);
    let want = [
        "embed.rtt.so3",
        "embed.metric.so3",
        "embed.kappa.su2",
        "embed.star.so3",
        "embed.unimod.su2",
        "embed.cov.so3.n0",
        "embed.cov.so3.n23",
        "embed.plane.so3",
        "embed.zzbar.n23",
        "embed.zzbar.n0.rejected",
    ];
    let missing: Vec<&str> = want.iter().copied().filter(|id| !has(&out, id)).collect();
    Verdict::new(
        ok && missing.is_empty() && t < Duration::from_secs(300),
        format!(
            "{} checks in {t:.2?}; failing {failing:?}; missing {missing:?}",
            out.len()
        ),
    )
}

fn lorentz() -> Verdict {
    let sig = Signature::Lorentz;
    let mut out = embedding::suite(sig);
    out.extend(nc::suite(sig));
    out.extend(tensor::suite(sig, &[]));
    let (ok, failing) = all_pass(&out, |_| true);
    let real = [
        "embed.real.so21",
        "embed.real.rules.so21",
        "embed.real.z.so21",
        "tensor.real.so21",
    ];
    let present = real.iter().all(|id| has(&out, id));
    Verdict::new(
        ok && present,
        format!(
            "{} checks with real coordinates and |q| = 1 conjugation; failing {failing:?}",
            out.len()
        ),
    )
}

fn confluence() -> Verdict {
    let mut ok = true;
    let mut n = 0;
    let mut failing = Vec::new();
    for sig in SIGS {
        let out = nc::suite(sig);
        for name in shipped_algebras(sig) {
            n += 1;
            if !has(&out, &format!("nc.confluence.{name}")) {
                ok = false;
                failing.push(format!("{name}/{}", sig.as_str()));
            }
        }
        if sig == Signature::Euclid {
            ok &= has(&out, "nc.confluence.corrupted.rejected");
        }
    }
    Verdict::new(
        ok,
        format!("{n} systems confluent to degree 3, failing {failing:?}; corrupted control has unresolved overlaps"),
    )
}

fn centrality() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for sig in SIGS {
        let out = nc::suite(sig);
        ok &= has(&out, "nc.centrality.lambda") && has(&out, "nc.centrality.rhat.rejected");
        if let Some(o) = out.iter().find(|o| o.id == "nc.centrality.lambda") {
            notes.push(format!("{}: {}", sig.as_str(), o.detail.clone().unwrap_or_default()));
        }
    }
    Verdict::new(ok, notes.join("; "))
}

fn scan(cat: &Catalog, convention: Convention, radius: i64) -> (Vec<RelationResult>, Vec<CheckOutcome>, Vec<Duration>) {
    let mut results = Vec::new();
    let mut outcomes = Vec::new();
    let mut times = Vec::new();
    for q in DEFAULT_Q {
        let start = Instant::now();
        let cfg = ScanConfig {
            window: BasisWindow::radius(radius).unwrap(),
            qvals: vec![q],
            convention,
            tolerance: TOL,
        };
        let r = rep::scan(cat, &cfg).unwrap();
        outcomes.extend(rep::outcomes(cat, &r, &cfg));
        results.extend(r);
        times.push(start.elapsed());
    }
    (results, outcomes, times)
}

/// Documented failure families of the printed relations under the
/// adjoint-consistent convention (see the decisions ledger).
fn documented_adjoint_consistent(id: &str) -> bool {
    id.starts_with("rep.rel.coord.")
        || (id.starts_with("rep.rel.rhotheta.") && id.contains("theta2"))
        || id.ends_with(".v")
        || id == "rep.consistency"
}

fn representation() -> Verdict {
    let mut cat = Catalog::build().unwrap();
    cat.relations
        .retain(|r| matches!(r.kind, Kind::Printed | Kind::Commutant));
    let gs = cat.alphabet().index_of("gamma*").unwrap();
    let gsi = cat.alphabet().index_of("gamma*^-1").unwrap();

    let (_, ac, times) = scan(&cat, Convention::AdjointConsistent, 6);
    let ac_fail: BTreeSet<String> = ac
        .iter()
        .filter(|o| !o.passed && o.id != "rep.consistency")
        .map(|o| o.id.clone())
        .collect();
    let slow = times.iter().any(|t| *t > Duration::from_secs(120));
    let first = ac_fail.is_empty() && !slow;

    let (vr, vo, _) = scan(&cat, Convention::Verbatim, 6);
    let reproduced = vo.iter().any(|o| o.id == "rep.adj.gamma" && !o.passed)
        && vo
            .iter()
            .any(|o| o.id == "rep.rel.su.alphasalpha_p_gammasgamma_eq_1" && !o.passed);
    let uses_gs: BTreeSet<&str> = cat
        .relations
        .iter()
        .filter(|r| r.uses(gs) || r.uses(gsi))
        .map(|r| r.id.as_str())
        .collect();
    let outside: BTreeSet<&str> = vr
        .iter()
        .filter(|r| !r.passed(TOL) && !uses_gs.contains(r.id.as_str()))
        .map(|r| r.id.as_str())
        .chain(
            vo.iter()
                .filter(|o| o.id.starts_with("rep.adj.") && !o.passed && !o.id.starts_with("rep.adj.gamma"))
                .map(|o| o.id.as_str()),
        )
        .collect();
    let confined = outside.is_empty();

    let pass = first && reproduced && confined;
    let times: Vec<String> = times.iter().map(|t| format!("{t:.1?}")).collect();
    let sample: Vec<&str> = ac_fail.iter().take(3).map(String::as_str).collect();
    let detail = format!(
        "adjoint-consistent: {} of {} checks above 1e-10 at some q (e.g. {sample:?}), scan times per q {times:?}; verbatim: gamma* discrepancy {}, {} failure(s) outside it",
        ac_fail.len(),
        ac.iter().map(|o| o.id.as_str()).collect::<BTreeSet<_>>().len(),
        if reproduced { "reproduced" } else { "NOT reproduced" },
        outside.len()
    );
    let mut v = Verdict::new(pass, detail);
    // recorded analysis: printed coordinate errata, the printed Theta2
    // exponent and the v commutators; adjointness itself holds
    v.documented = !pass
        && reproduced
        && !slow
        && ac_fail.iter().all(|id| documented_adjoint_consistent(id))
        && ac.iter().filter(|o| o.id.starts_with("rep.adj.")).all(|o| o.passed);
    v
}

fn cross_backend() -> Verdict {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for sig in SIGS {
        for o in tensor::suite(sig, &DEFAULT_Q)
            .iter()
            .filter(|o| o.id.starts_with("tensor.numeric."))
        {
            ok &= o.passed && o.residual.is_some_and(|r| r < 1e-12);
            worst = worst.max(o.residual.unwrap_or(0.0));
            count += 1;
        }
        let reg = Registry::new(sig);
        for f in corpus() {
            let checked = qvt::load(&std::fs::read_to_string(&f).unwrap(), &reg).unwrap();
            let exact = qvt::residuals_exact(&checked, &reg).unwrap();
            for q in DEFAULT_Q {
                let num = qvt::residuals_numeric(&checked, &reg, q).unwrap();
                for (e, n) in exact.iter().zip(&num) {
                    count += 1;
                    let rel = n.relative();
                    worst = worst.max(if e.tensor.is_zero() { rel } else { 0.0 });
                    if e.tensor.is_zero() {
                        ok &= rel < 1e-12;
                    } else if n.tensor.max_abs() <= TOL {
                        ok = false;
                    }
                }
            }
        }
    }
    let cat = Catalog::build().unwrap();
    let (_, out, _) = scan(&cat, Convention::Corrected, 4);
    let consistent = out.iter().filter(|o| o.id == "rep.consistency").all(|o| o.passed);
    ok &= consistent;
    Verdict::new(
        ok,
        format!(
            "{count} tensor/script comparisons, worst relative residual {worst:.1e}; representation verdicts {} the exact algebra for all {} relations (corrected convention, radius 4)",
            if consistent { "match" } else { "DISAGREE with" },
            cat.relations.len()
        ),
    )
}

fn corpus_criterion() -> Verdict {
    let mut ok = true;
    let mut checks = 0;
    let files = corpus();
    for f in &files {
        let text = std::fs::read_to_string(f).unwrap();
        let script = match qvt::parse(&text) {
            Ok(s) => s,
            Err(_) => {
                ok = false;
                continue;
            }
        };
        ok &= qvt::parse(&script.to_string()).is_ok_and(|s| s == script);
        for sig in SIGS {
            let reg = Registry::new(sig);
            match qvt::load(&text, &reg).and_then(|c| qvt::run(&c, &reg, qvt::Backend::Exact, TOL)) {
                Ok(rs) => {
                    checks += rs.len();
                    ok &= rs.iter().all(|r| r.passed);
                }
                Err(_) => ok = false,
            }
        }
    }
    Verdict::new(
        ok,
        format!(
            "{} scripts, {checks} exact checks over both signatures, render/parse round trip",
            files.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exact braid relation for the SU and both SO R-matrices", qybe),
        (
            "cubic characteristic equation, projectors, multiplicities, trace projector",
            reconstruction,
        ),
        ("symmetric and antisymmetric projector forms", projectors),
        ("embedding theorems", embedding_theorems),
        ("lorentz real form", lorentz),
        ("confluence of every shipped rewriting system", confluence),
        ("centrality solve for the x-y coupling", centrality),
        ("representation scan", representation),
        ("cross-backend agreement", cross_backend),
        ("DSL corpus", corpus_criterion),
    ];
    let mut unexpected = Vec::new();
    let mut green = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f();
        let status = if v.pass { "PASS" } else { "FAIL" };
        let note = if !v.pass && v.documented {
            " [red as analysed in the decisions ledger]"
        } else {
            ""
        };
        println!(
            "criterion {:>2}: {status} {title} ({:.1?}): {}{note}",
            i + 1,
            start.elapsed(),
            v.detail
        );
        if v.pass {
            green += 1;
        } else if !v.documented {
            unexpected.push(i + 1);
        }
    }
    println!("acceptance: {green} of {} criteria pass", criteria.len());
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
