//! Property checks against brute force, and their sensitivity to damage.

use klv_core::coxeter::{CoxeterGroup, CoxeterSystem, TwistSpec};
use klv_core::kl::{compute_kl, KlTable};
use klv_core::twisted::{compute_psigma, restrict_kl, split_polys};
use klv_core::verify::{check_a_prime, check_b, check_b_prime, check_bar_oracles};
use klv_core::LaurentPoly;

fn group(label: &str) -> CoxeterGroup {
    CoxeterSystem::from_label(label, TwistSpec::FromLabel)
        .unwrap()
        .enumerate()
        .unwrap()
}

/// Property B over every pair `y <= z`, not just covers.
fn b_brute_force(g: &CoxeterGroup, kl: &KlTable) -> bool {
    g.elements().all(|w| {
        g.elements().all(|z| {
            g.elements()
                .filter(|&y| g.bruhat_leq(y, z))
                .all(|y| (kl.p(y, w) - kl.p(z, w)).is_nonneg())
        })
    })
}

/// Zeroes one entry `P_{y,w}` with `y < w` that equals 1.
fn damaged(g: &CoxeterGroup, kl: &KlTable) -> KlTable {
    let target = kl
        .iter()
        .find(|&(y, w, p)| y != w && p.is_one() && g.length(w) - g.length(y) >= 2)
        .map(|(y, w, _)| (y, w))
        .expect("some off-diagonal entry");
    let entries: Vec<_> = kl
        .iter()
        .filter(|&(y, w, _)| (y, w) != target)
        .map(|(y, w, p)| (y, w, p.clone()))
        .collect();
    KlTable::from_entries(g, entries).unwrap()
}

#[test]
fn cover_check_agrees_with_all_pairs() {
    for label in ["A3", "BC3", "H3", "2A3", "A1xA2"] {
        let g = group(label);
        let kl = compute_kl(&g).unwrap();
        assert!(check_b(&g, &kl).holds(), "{label}");
        assert!(b_brute_force(&g, &kl), "{label}");

        let bad = damaged(&g, &kl);
        let report = check_b(&g, &bad);
        assert!(report.fails(), "{label}");
        assert!(!b_brute_force(&g, &bad), "{label}");
        let key = report.witness.unwrap().key;
        assert!(!(bad.p(key[0], key[2]) - bad.p(key[1], key[2])).is_nonneg());
    }
}

#[test]
fn bar_oracle_detects_a_damaged_table() {
    let g = group("A3");
    let kl = compute_kl(&g).unwrap();
    let sigma = compute_psigma(&g).unwrap();
    let [c, a] = check_bar_oracles(&g, &damaged(&g, &kl), &sigma, 120);
    assert!(c.fails());
    assert!(c.witness.is_some());
    assert!(a.holds());
}

#[test]
fn split_polynomials_recombine() {
    for label in ["A4", "2A4", "BC3", "2D4"] {
        let g = group(label);
        let kl = compute_kl(&g).unwrap();
        let sigma = compute_psigma(&g).unwrap();
        let split = split_polys(&g, &kl, &sigma).unwrap();
        let restricted = restrict_kl(&g, &kl);
        for &w in g.twisted_involutions() {
            for &y in g.twisted_involutions() {
                let (p, m) = (split.plus.get(y, w), split.minus.get(y, w));
                assert_eq!(&(p + m), restricted.get(y, w), "{label}");
                assert_eq!(&(p - m), sigma.p(y, w), "{label}");
            }
        }
        assert!(check_a_prime(&split).holds());
        assert!(check_b_prime(&g, &split).iter().all(|r| r.holds()));
    }
}

#[test]
fn known_singular_polynomial() {
    // In A3 the first singular Schubert variety is X_{s2 s1 s3 s2}.
    let g = group("A3");
    let kl = compute_kl(&g).unwrap();
    let w = g.from_word(&[1, 0, 2, 1]);
    assert_eq!(kl.p(0, w), &LaurentPoly::from_q_coeffs(&[1, 1]));
    assert_eq!(
        kl.p(g.from_word(&[1]), w),
        &LaurentPoly::from_q_coeffs(&[1, 1])
    );
    assert!(kl.p(g.from_word(&[0]), w).is_one());
}
