use isoq::nc::{algebra, shipped_algebras};
use isoq::tensor::{self, constant, eigenprojectors, extract_metric, qybe_residual, so_eigenvalues};
use isoq::{embedding, nc, CheckOutcome, Scalar, Signature};

const SIGS: [Signature; 2] = [Signature::Euclid, Signature::Lorentz];

fn failing(out: &[CheckOutcome]) -> Vec<&str> {
    out.iter().filter(|o| !o.passed).map(|o| o.id.as_str()).collect()
}

#[test]
fn tensor_suite_passes_in_both_signatures() {
    for sig in SIGS {
        let out = tensor::suite(sig, &[0.2, 0.5, 0.9]);
        assert!(failing(&out).is_empty(), "{sig:?}: {:?}", failing(&out));
        assert_eq!(out.iter().filter(|o| o.id.starts_with("tensor.mult.")).count(), 3);
        assert_eq!(
            out.iter().any(|o| o.id == "tensor.real.so21"),
            sig == Signature::Lorentz
        );
    }
}

#[test]
fn euclid_and_lorentz_rhat_differ_by_signs_only() {
    let e = constant("rhat_so", Signature::Euclid).unwrap();
    let l = constant("rhat_so", Signature::Lorentz).unwrap();
    let mut flipped = 0;
    for (a, b) in e.data().iter().zip(l.data()) {
        if a != b {
            assert_eq!(a.clone(), -b.clone());
            flipped += 1;
        }
    }
    assert!(flipped > 0);
    // both satisfy the braid relation and share the spectrum
    for r in [&e, &l] {
        assert!(qybe_residual(r).is_zero());
        assert_eq!(eigenprojectors(r, &so_eigenvalues()).unwrap().len(), 3);
    }
}

#[test]
fn trace_projector_is_the_metric_transport() {
    for sig in SIGS {
        let r = constant("rhat_so", sig).unwrap();
        let projs = eigenprojectors(&r, &so_eigenvalues()).unwrap();
        let m = extract_metric(&projs[2]).unwrap();
        let scale = m.transport_scale.expect("T is proportional to C ⊗ C");
        assert!(!scale.is_zero());
        let id = tensor::einsum(&[(&m.lower, "ij"), (&m.upper, "jk")], "ik").unwrap();
        assert_eq!(
            id,
            isoq::Tensor::from_fn(&[3, 3], |i| Scalar::int((i[0] == i[1]) as i64))
        );
        assert_eq!(*m.lower.get(&[1, 1]), Scalar::int(1));
    }
}

#[test]
fn nc_suite_reports_only_the_coordinate_errata() {
    let out = nc::suite(Signature::Euclid);
    assert_eq!(failing(&out), ["nc.claims.coord"]);
    let coord = out.iter().find(|o| o.id == "nc.claims.coord").unwrap();
    assert_eq!(coord.residual, Some(9.0));
    for name in shipped_algebras(Signature::Euclid) {
        assert!(out.iter().any(|o| o.id == format!("nc.confluence.{name}")));
    }
    assert!(out
        .iter()
        .any(|o| o.id == "nc.confluence.corrupted.rejected" && o.passed));

    let out = nc::suite(Signature::Lorentz);
    assert!(failing(&out).is_empty(), "{:?}", failing(&out));
}

#[test]
fn corrupted_system_has_unresolved_overlaps() {
    let rs = algebra("corrupted", Signature::Euclid).unwrap();
    assert!(!rs.overlap_check(3).is_empty());
    let rs = algebra("su2mu", Signature::Euclid).unwrap();
    assert!(rs.overlap_check(3).is_empty());
}

#[test]
fn embedding_suite_passes_in_both_signatures() {
    for sig in SIGS {
        let out = embedding::suite(sig);
        assert!(failing(&out).is_empty(), "{sig:?}: {:?}", failing(&out));
        let rejected = out.iter().filter(|o| o.id.ends_with(".rejected")).count();
        assert!(rejected >= 3);
    }
    let out = embedding::suite(Signature::Euclid);
    for id in [
        "embed.rtt.so3",
        "embed.metric.so3",
        "embed.star.so3",
        "embed.plane.so3",
        "embed.zzbar.n23",
        "embed.zzbar.n0.rejected",
    ] {
        assert!(out.iter().any(|o| o.id == id), "{id} missing");
    }
}
