use std::path::Path;
use std::process::{Command, Output};

const SMALL: &str = "n=0..3,m=-3..3,k=-3..3,r=0..3,s=0..3,v=-3..3";

fn isoq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .display()
        .to_string()
}

fn report_ids(path: &Path) -> Vec<String> {
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v.as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn lorentz_rep_is_refused() {
    let o = isoq(&["rep", "--signature", "lorentz"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not exist on the Hilbert space level"));
}

#[test]
fn corpus_script_passes_exactly() {
    let o = isoq(&["dsl", "run", &corpus("rhat_so_sandwich.qvt"), "--backend", "exact"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS dsl.rhat_so_sandwich.1"));
}

#[test]
fn numeric_dsl_run_uses_the_given_q() {
    let o = isoq(&[
        "dsl",
        "run",
        &corpus("yang_baxter.qvt"),
        "--backend",
        "numeric",
        "--q",
        "0.3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("q=0.3").count(), 2);
}

#[test]
fn broken_script_fails_and_bad_script_errors() {
    let dir = tempfile::tempdir().unwrap();
    let wrong = dir.path().join("wrong.qvt");
    std::fs::write(&wrong, "check rhat_su2[a,b,c,d] == q * delta2[a,c]*delta2[b,d];\n").unwrap();
    assert_eq!(isoq(&["dsl", "run", wrong.to_str().unwrap()]).status.code(), Some(1));
    let bad = dir.path().join("bad.qvt");
    std::fs::write(&bad, "check cg[i,i,i] == cg[i,i,i];\n").unwrap();
    let o = isoq(&["dsl", "run", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(": 1:7: index `i` appears three or more times"));
}

#[test]
fn reports_are_deterministic_without_timing() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = isoq(&[
            "suite",
            "--only",
            "tensor.",
            "--no-timing",
            "--report",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    assert!(!String::from_utf8_lossy(&ta).contains("duration_ms"));
    let ids = report_ids(&a);
    assert!(ids.iter().all(|i| i.starts_with("tensor.")));
    assert!(ids.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn empty_selection_writes_an_empty_array() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.json");
    let o = isoq(&["suite", "--only", "nothing.", "--report", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&p).unwrap().trim(), "[]");
}

#[test]
fn verbatim_scan_flags_the_gamma_star_coefficient() {
    let o = isoq(&["rep", "--q", "0.5", "--convention", "verbatim", "--window", SMALL]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("discrepancy: pi(gamma*) printed coefficient Q^(2n+2), kept"));
    assert!(s.contains("FAIL rep.adj.gamma q=0.5"));
    assert!(s.contains("FAIL rep.rel.su.alphasalpha_p_gammasgamma_eq_1 "));
}

#[test]
fn adjoint_consistent_scan_repairs_unitarity() {
    let o = isoq(&["rep", "--q", "0.5", "--window", SMALL, "--only", "rep.rel.su."]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("discrepancy: pi(gamma*) printed coefficient Q^(2n+2), replaced by Q^(2n)"));
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "signature = lorentz\nq = 0.2\nonly = tensor.numeric\n").unwrap();
    let o = isoq(&["suite", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tensor.numeric.so21 q=0.2"));
    let o = isoq(&["suite", "--config", cfg.to_str().unwrap(), "--q", "0.7"]);
    assert!(stdout(&o).contains("tensor.numeric.so21 q=0.7"));
}

#[test]
fn invalid_flags_are_usage_errors() {
    for args in [
        &["rep", "--q", "1.5"][..],
        &["suite", "--backend", "fast"],
        &["rep", "--convention", "nice"],
        &["frobnicate"],
    ] {
        assert_eq!(isoq(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn euclid_suite_lists_every_module_and_reports_the_errata() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("out.json");
    let o = isoq(&[
        "suite",
        "--signature",
        "euclid",
        "--window",
        SMALL,
        "--report",
        p.to_str().unwrap(),
    ]);
    // the printed coordinate relations contain errata, so the full run is red
    assert_eq!(o.status.code(), Some(1));
    let ids = report_ids(&p);
    for prefix in ["tensor.", "nc.", "embed.", "dsl.", "rep."] {
        assert!(ids.iter().any(|i| i.starts_with(prefix)), "{prefix}");
    }
    let s = stdout(&o);
    assert!(s.contains("FAIL nc.claims.coord"));
    assert!(s
        .lines()
        .filter(|l| l.starts_with("FAIL"))
        .all(|l| l.contains(" nc.claims.coord") || l.contains(" rep.")));
}

#[test]
fn lorentz_suite_passes_without_a_representation() {
    let o = isoq(&["suite", "--signature", "lorentz"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains(" rep."));
    assert!(stdout(&o).contains("PASS embed.real.so21"));
}
