//! Structure constants against their defining identities.

use klv_core::coxeter::{CoxeterGroup, CoxeterSystem, TwistSpec};
use klv_core::kl::{compute_h, compute_kl};
use klv_core::twisted::{compute_hsigma, compute_htilde, compute_psigma, split_constants};
use klv_core::verify::{check_h_definition, check_hsigma_definition, check_star_symmetry};
use klv_core::LaurentPoly;

fn group(label: &str) -> CoxeterGroup {
    CoxeterSystem::from_label(label, TwistSpec::FromLabel)
        .unwrap()
        .enumerate()
        .unwrap()
}

#[test]
fn products_match_the_hecke_algebra() {
    for label in ["A2", "2A2", "A3", "2A3", "BC2", "G2", "2G2", "A1xA2"] {
        let g = group(label);
        let kl = compute_kl(&g).unwrap();
        let sigma = compute_psigma(&g).unwrap();
        let h = compute_h(&g, &kl);
        let hsigma = compute_hsigma(&g, &sigma, &kl);
        assert!(check_h_definition(&g, &kl, &h, 120).holds(), "{label}");
        assert!(
            check_hsigma_definition(&g, &kl, &sigma, &hsigma, 120).holds(),
            "{label}"
        );
        assert!(check_star_symmetry(&g, &hsigma).holds(), "{label}");
    }
}

#[test]
fn htilde_is_a_double_contraction_of_h() {
    for label in ["A3", "2A3", "BC2", "H3"] {
        let g = group(label);
        let kl = compute_kl(&g).unwrap();
        let h = compute_h(&g, &kl);
        let htilde = compute_htilde(&g, &h);
        for x in g.elements() {
            let xbar = g.inverse(g.star(x));
            for &y in g.twisted_involutions() {
                for &z in g.twisted_involutions() {
                    let expected: LaurentPoly = g
                        .elements()
                        .map(|w| h.get(x, y, w) * h.get(w, xbar, z))
                        .sum();
                    assert_eq!(htilde.get(x, y, z), &expected, "{label} ({x}, {y}; {z})");
                }
            }
        }
    }
}

#[test]
fn split_constants_recombine() {
    let g = group("2A3");
    let kl = compute_kl(&g).unwrap();
    let sigma = compute_psigma(&g).unwrap();
    let htilde = compute_htilde(&g, &compute_h(&g, &kl));
    let hsigma = compute_hsigma(&g, &sigma, &kl);
    let split = split_constants(&g, &htilde, &hsigma).unwrap();
    for x in g.elements() {
        for &y in g.twisted_involutions() {
            for &z in g.twisted_involutions() {
                let (p, m) = (split.plus.get(x, y, z), split.minus.get(x, y, z));
                assert_eq!(&(p + m), htilde.get(x, y, z));
                assert_eq!(&(p - m), hsigma.get(x, y, z));
            }
        }
    }
}

#[test]
fn identity_acts_trivially() {
    let g = group("2A3");
    let kl = compute_kl(&g).unwrap();
    let sigma = compute_psigma(&g).unwrap();
    let hsigma = compute_hsigma(&g, &sigma, &kl);
    for &y in g.twisted_involutions() {
        for &z in g.twisted_involutions() {
            let expected = if y == z {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            };
            assert_eq!(hsigma.get(0, y, z), &expected);
        }
    }
}
