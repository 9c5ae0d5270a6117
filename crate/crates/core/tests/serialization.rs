//! JSON forms of polynomials and reports, and table reconstruction.

use klv_core::coxeter::{CoxeterSystem, TwistSpec};
use klv_core::kl::{compute_h, compute_kl, ConstantsKind, ConstantsTable, KlTable};
use klv_core::twisted::{compute_psigma, SigmaTable};
use klv_core::verify::{check_a, PropertyReport, Witness};
use klv_core::LaurentPoly;
use proptest::prelude::*;

#[test]
fn polynomials_serialize_as_exponent_maps() {
    let p = LaurentPoly::from_coeffs(-1, vec![2, 0, -3]);
    assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"-1":2,"1":-3}"#);
    assert_eq!(serde_json::to_string(&LaurentPoly::zero()).unwrap(), "{}");
    let big = LaurentPoly::constant(59_133_414_193_112_056);
    let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
    assert_eq!(back, big);
    assert!(serde_json::from_str::<LaurentPoly>(r#"{"x":1}"#).is_err());
}

#[test]
fn reports_serialize_with_witnesses() {
    let failing = PropertyReport::from_scan(
        "C",
        3,
        Some(Witness {
            family: Some("h".into()),
            key: vec![0, 1, 1],
            poly: LaurentPoly::from_q_coeffs(&[-1]),
        }),
    );
    let json = serde_json::to_value(&failing).unwrap();
    assert_eq!(json["verdict"], "fails");
    assert_eq!(json["witness"]["key"], serde_json::json!([0, 1, 1]));
    assert_eq!(json["witness"]["poly"], serde_json::json!({"0": -1}));
    assert_eq!(
        failing.to_string(),
        "C: FAILS (3 checked); witness h at [0, 1, 1]: -1"
    );

    let g = CoxeterSystem::from_label("A2", TwistSpec::Identity)
        .unwrap()
        .enumerate()
        .unwrap();
    let ok = serde_json::to_value(check_a(&compute_kl(&g).unwrap())).unwrap();
    assert_eq!(ok["verdict"], "holds");
    assert!(ok.get("witness").is_none());
}

#[test]
fn tables_rebuild_from_their_entries() {
    let g = CoxeterSystem::from_label("2A3", TwistSpec::FromLabel)
        .unwrap()
        .enumerate()
        .unwrap();
    let kl = compute_kl(&g).unwrap();
    let again = KlTable::from_entries(&g, kl.iter().map(|(y, w, p)| (y, w, p.clone()))).unwrap();
    assert!(again.iter().eq(kl.iter()));

    let sigma = compute_psigma(&g).unwrap();
    let entries: Vec<_> = sigma
        .pairs()
        .iter()
        .map(|(y, w, p)| (y, w, p.clone()))
        .collect();
    let again = SigmaTable::from_entries(&g, entries.clone()).unwrap();
    for &w in g.twisted_involutions() {
        assert_eq!(again.mu_sigma_list(w), sigma.mu_sigma_list(w));
    }

    // A missing diagonal entry and an entry above the degree bound are rejected.
    let no_diagonal = entries.iter().filter(|e| e.0 != e.1).cloned();
    assert!(SigmaTable::from_entries(&g, no_diagonal).is_err());
    let w0 = g.longest_element();
    let mut too_big = entries.clone();
    too_big.retain(|e| (e.0, e.1) != (0, w0));
    too_big.push((0, w0, LaurentPoly::from_q_coeffs(&[1, 0, 0, 0, 1])));
    assert!(SigmaTable::from_entries(&g, too_big).is_err());

    let h = compute_h(&g, &kl);
    let all: Vec<u32> = g.elements().collect();
    let rebuilt = ConstantsTable::from_entries(
        ConstantsKind::H,
        g.size(),
        all.clone(),
        all.clone(),
        h.iter().map(|(x, y, z, p)| (x, y, z, p.clone())),
    )
    .unwrap();
    assert!(rebuilt.iter().eq(h.iter()));
    let duplicated = h
        .iter()
        .take(1)
        .chain(h.iter())
        .map(|(x, y, z, p)| (x, y, z, p.clone()));
    assert!(
        ConstantsTable::from_entries(ConstantsKind::H, g.size(), all.clone(), all, duplicated)
            .is_err()
    );
}

proptest! {
    #[test]
    fn polynomial_json_round_trip(lo in -30i32..30, coeffs in prop::collection::vec(any::<i64>(), 0..10)) {
        let p = LaurentPoly::from_coeffs(lo, coeffs.into_iter().map(i128::from).collect());
        let json = serde_json::to_string(&p).unwrap();
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
