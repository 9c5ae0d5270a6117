use rayon::prelude::*;

use super::{PropertyReport, Witness};
use crate::coxeter::{CoxeterGroup, ElementId};
use crate::kl::{ConstantsKind, ConstantsTable, KlTable};
use crate::laurent::{is_unimodal, LaurentPoly, UParity};
use crate::twisted::{PairTable, SplitConstants, SplitPolys};

/// `v^d f` is a unimodal polynomial in `q`, where `d` is the degree of `f`.
pub fn is_unimodal_in_q(f: &LaurentPoly) -> bool {
    if f.is_zero() {
        return true;
    }
    match f.shift(f.degree()).q_coefficients() {
        Ok(a) => is_unimodal(&a),
        Err(_) => false,
    }
}

fn first_failure<'a>(
    entries: impl Iterator<Item = (Vec<ElementId>, &'a LaurentPoly)>,
    family: Option<&str>,
    ok: impl Fn(&LaurentPoly) -> bool,
) -> (u64, Option<Witness>) {
    let mut checked = 0;
    for (key, p) in entries {
        checked += 1;
        if !ok(p) {
            return (
                checked,
                Some(Witness {
                    family: family.map(str::to_string),
                    key,
                    poly: p.clone(),
                }),
            );
        }
    }
    (checked, None)
}

fn kind_name(kind: ConstantsKind) -> &'static str {
    match kind {
        ConstantsKind::H => "h",
        ConstantsKind::HTilde => "h~",
        ConstantsKind::HSigma => "h^sigma",
        ConstantsKind::HPlus => "h^+",
        ConstantsKind::HMinus => "h^-",
        ConstantsKind::F => "f",
    }
}

fn constant_entries(t: &ConstantsTable) -> impl Iterator<Item = (Vec<ElementId>, &LaurentPoly)> {
    t.iter().map(|(x, y, z, p)| (vec![x, y, z], p))
}

fn pair_entries(t: &PairTable) -> impl Iterator<Item = (Vec<ElementId>, &LaurentPoly)> {
    t.iter().map(|(y, w, p)| (vec![y, w], p))
}

/// Nonnegativity of every entry of a constants table.
pub fn check_nonnegative(check: &str, table: &ConstantsTable) -> PropertyReport {
    let (n, w) = first_failure(
        constant_entries(table),
        Some(kind_name(table.kind())),
        LaurentPoly::is_nonneg,
    );
    PropertyReport::from_scan(check, n, w)
}

/// Unimodality of `v^d h` in `q` for every entry of a constants table.
pub fn check_unimodal(check: &str, table: &ConstantsTable) -> PropertyReport {
    let (n, w) = first_failure(
        constant_entries(table),
        Some(kind_name(table.kind())),
        is_unimodal_in_q,
    );
    PropertyReport::from_scan(check, n, w)
}

/// Property A: every `P_{y,w}` has nonnegative coefficients.
pub fn check_a(kl: &KlTable) -> PropertyReport {
    let (n, w) = first_failure(
        kl.iter().map(|(y, w, p)| (vec![y, w], p)),
        None,
        LaurentPoly::is_nonneg,
    );
    PropertyReport::from_scan("A", n, w)
}

/// Property A': `P^+` and `P^-` have nonnegative coefficients.
pub fn check_a_prime(split: &SplitPolys) -> PropertyReport {
    let (n1, w1) = first_failure(
        pair_entries(&split.plus),
        Some("P^+"),
        LaurentPoly::is_nonneg,
    );
    if w1.is_some() {
        return PropertyReport::from_scan("A'", n1, w1);
    }
    let (n2, w2) = first_failure(
        pair_entries(&split.minus),
        Some("P^-"),
        LaurentPoly::is_nonneg,
    );
    PropertyReport::from_scan("A'", n1 + n2, w2)
}

/// Elements covered by `z` in the Bruhat order: the length `l(z) - 1`
/// elements obtained by deleting one letter of a reduced word of `z`.
pub fn bruhat_covers(g: &CoxeterGroup, z: ElementId) -> Vec<ElementId> {
    let word: Vec<usize> = g.word(z).iter().map(|&s| s as usize).collect();
    let target = g.length(z).saturating_sub(1);
    let mut out: Vec<ElementId> = (0..word.len())
        .map(|i| {
            let sub: Vec<usize> = word[..i].iter().chain(&word[i + 1..]).copied().collect();
            g.from_word(&sub)
        })
        .filter(|&y| g.length(y) == target)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Property B: `P_{y,w} - P_{z,w}` has nonnegative coefficients whenever
/// `y <= z`, with `P_{z,w} = 0` for `z` not below `w`.
///
/// Any `y <= z` is joined by a chain of Bruhat covers and the differences
/// telescope, so checking covering pairs decides the property for all pairs.
/// The witness key is `[y, z, w]` for a covering pair `y < z`.
pub fn check_b(g: &CoxeterGroup, kl: &KlTable) -> PropertyReport {
    let covers: Vec<Vec<ElementId>> = g.elements().map(|z| bruhat_covers(g, z)).collect();
    let per_w: Vec<(u64, Option<Witness>)> = g
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|w| {
            let mut checked = 0;
            for z in g.elements() {
                let pz = kl.p(z, w);
                for &y in &covers[z as usize] {
                    let py = kl.p(y, w);
                    if py.is_zero() && pz.is_zero() {
                        continue;
                    }
                    checked += 1;
                    let diff = py - pz;
                    if !diff.is_nonneg() {
                        return (
                            checked,
                            Some(Witness {
                                family: None,
                                key: vec![y, z, w],
                                poly: diff,
                            }),
                        );
                    }
                }
            }
            (checked, None)
        })
        .collect();
    let checked = per_w.iter().map(|r| r.0).sum();
    let witness = per_w.into_iter().find_map(|r| r.1);
    PropertyReport::from_scan("B", checked, witness)
}

fn b_prime_scan(
    g: &CoxeterGroup,
    table: &PairTable,
    family: &str,
    restricted: bool,
) -> (u64, Option<Witness>) {
    let tw = g.twisted_involutions();
    let per_w: Vec<(u64, Option<Witness>)> = tw
        .par_iter()
        .map(|&w| {
            let mut checked = 0;
            for &z in tw {
                if restricted && !g.bruhat_leq(z, w) {
                    continue;
                }
                let pz = table.get(z, w);
                for &y in tw {
                    if !g.bruhat_leq(y, z) {
                        continue;
                    }
                    checked += 1;
                    let diff = table.get(y, w) - pz;
                    if !diff.is_nonneg() {
                        return (
                            checked,
                            Some(Witness {
                                family: Some(family.to_string()),
                                key: vec![y, z, w],
                                poly: diff,
                            }),
                        );
                    }
                }
            }
            (checked, None)
        })
        .collect();
    let checked = per_w.iter().map(|r| r.0).sum();
    (checked, per_w.into_iter().find_map(|r| r.1))
}

/// Property B' for `P^+` and `P^-` over all twisted `y <= z` and `w`.
///
/// Returns the literal check and the variant that also requires `z <= w`.
pub fn check_b_prime(g: &CoxeterGroup, split: &SplitPolys) -> [PropertyReport; 2] {
    [false, true].map(|restricted| {
        let name = if restricted { "B' (z <= w)" } else { "B'" };
        let (n1, w1) = b_prime_scan(g, &split.plus, "P^+", restricted);
        if w1.is_some() {
            return PropertyReport::from_scan(name, n1, w1);
        }
        let (n2, w2) = b_prime_scan(g, &split.minus, "P^-", restricted);
        PropertyReport::from_scan(name, n1 + n2, w2)
    })
}

/// Property C: nonnegative structure constants `h`.
pub fn check_c(h: &ConstantsTable) -> PropertyReport {
    check_nonnegative("C", h)
}

/// Property D: `v^d h_{x,y;z}` is unimodal in `q`.
pub fn check_d(h: &ConstantsTable) -> PropertyReport {
    check_unimodal("D", h)
}

/// Property C' for `h^+` and `h^-`.
pub fn check_c_prime(split: &SplitConstants) -> PropertyReport {
    both_halves("C'", split, LaurentPoly::is_nonneg)
}

/// Property D' for `h^+` and `h^-`.
pub fn check_d_prime(split: &SplitConstants) -> PropertyReport {
    both_halves("D'", split, is_unimodal_in_q)
}

fn both_halves(
    check: &str,
    split: &SplitConstants,
    ok: impl Fn(&LaurentPoly) -> bool + Copy,
) -> PropertyReport {
    let (n1, w1) = first_failure(constant_entries(&split.plus), Some("h^+"), ok);
    if w1.is_some() {
        return PropertyReport::from_scan(check, n1, w1);
    }
    let (n2, w2) = first_failure(constant_entries(&split.minus), Some("h^-"), ok);
    PropertyReport::from_scan(check, n1 + n2, w2)
}

/// Every entry lies in `Z[u^2]` or `u Z[u^2]` (`u = v + v^{-1}`) as decided
/// by the parity of `l(x) + l(y) + l(z)` for `h` and of `l(y) + l(z)` for
/// the twisted families, and is balanced.
pub fn check_parity(g: &CoxeterGroup, table: &ConstantsTable) -> PropertyReport {
    let kind = table.kind();
    let mut n = 0;
    let mut witness = None;
    for (x, y, z, p) in table.iter() {
        n += 1;
        let mut total = g.length(y) + g.length(z);
        if kind == ConstantsKind::H {
            total += g.length(x);
        }
        let expected = if total.is_multiple_of(2) {
            UParity::Even
        } else {
            UParity::Odd
        };
        let parity_ok = match p.u_parity() {
            Some(UParity::Zero) => true,
            Some(found) => found == expected,
            None => false,
        };
        if !parity_ok || !p.is_balanced() {
            witness = Some(Witness {
                family: Some(kind_name(kind).to_string()),
                key: vec![x, y, z],
                poly: p.clone(),
            });
            break;
        }
    }
    PropertyReport::from_scan(format!("parity {}", kind_name(kind)), n, witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterSystem, TwistSpec};
    use crate::kl::compute_kl;

    #[test]
    fn unimodal_in_q() {
        assert!(is_unimodal_in_q(&LaurentPoly::from_coeffs(
            -2,
            vec![1, 0, 3, 0, 1]
        )));
        assert!(is_unimodal_in_q(&LaurentPoly::u()));
        assert!(!is_unimodal_in_q(&LaurentPoly::from_coeffs(
            -2,
            vec![1, 0, -2, 0, 1]
        )));
        assert!(!is_unimodal_in_q(&LaurentPoly::from_coeffs(
            -2,
            vec![1, 1, 1]
        )));
        assert!(is_unimodal_in_q(&LaurentPoly::zero()));
    }

    #[test]
    fn synthetic_negative_entry_fails() {
        let g = CoxeterSystem::from_label("A1", TwistSpec::Identity)
            .unwrap()
            .enumerate()
            .unwrap();
        let bad = LaurentPoly::from_q_coeffs(&[-1, 1]);
        let t = ConstantsTable::from_rows(
            ConstantsKind::H,
            2,
            vec![0, 1],
            vec![0, 1],
            vec![vec![], vec![(1, bad.clone())], vec![], vec![]],
        );
        let r = check_c(&t);
        assert!(r.fails());
        assert_eq!(r.witness.unwrap().key, vec![0, 1, 1]);
        assert!(check_d(&t).fails());
        let _ = g;
    }

    #[test]
    fn covers_of_longest_a2() {
        let g = CoxeterSystem::from_label("A2", TwistSpec::Identity)
            .unwrap()
            .enumerate()
            .unwrap();
        let w0 = g.longest_element();
        assert_eq!(bruhat_covers(&g, w0).len(), 2);
        assert!(bruhat_covers(&g, 0).is_empty());
        let kl = compute_kl(&g).unwrap();
        assert!(check_a(&kl).holds());
        assert!(check_b(&g, &kl).holds());
    }
}
