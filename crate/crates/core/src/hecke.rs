//! Finitely supported vectors over the standard and canonical bases of the
//! Hecke algebras `H_q`, `H_{q^2}` and the twisted involution module.
//!
//! Only the standard bases (`t`, `T`, `a`) carry arithmetic here; the
//! canonical bases (`c`, `C`, `A`) are labels for coefficient vectors that
//! the table code produces.

use std::collections::BTreeMap;

use crate::coxeter::{CoxeterGroup, ElementId};
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `t_w` in `H_q`.
    SmallT,
    /// `c_w` in `H_q`.
    SmallC,
    /// `T_w` in `H_{q^2}`.
    BigT,
    /// `C_w` in `H_{q^2}`.
    BigC,
    /// `a_w` in the module, indexed by twisted involutions.
    SmallA,
    /// `A_w` in the module.
    BigA,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeVector {
    basis: Basis,
    coeffs: BTreeMap<ElementId, LaurentPoly>,
}

impl HeckeVector {
    pub fn zero(basis: Basis) -> Self {
        HeckeVector {
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, w: ElementId) -> Self {
        let mut v = Self::zero(basis);
        v.add_term(w, &LaurentPoly::one());
        v
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of basis element `w`.
    pub fn get(&self, w: ElementId) -> LaurentPoly {
        self.coeffs.get(&w).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing index order.
    pub fn terms(&self) -> impl Iterator<Item = (ElementId, &LaurentPoly)> {
        self.coeffs.iter().map(|(&w, p)| (w, p))
    }

    pub fn add_term(&mut self, w: ElementId, c: &LaurentPoly) {
        self.add_term_scaled(w, c, 1, 0);
    }

    /// Adds `k v^shift c` to the coefficient of `w`.
    pub fn add_term_scaled(&mut self, w: ElementId, c: &LaurentPoly, k: i128, shift: i32) {
        if c.is_zero() || k == 0 {
            return;
        }
        let slot = self.coeffs.entry(w).or_default();
        slot.add_scaled_shifted_assign(c, k, shift);
        if slot.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    /// Adds `p c` to the coefficient of `w`.
    pub fn add_term_product(&mut self, w: ElementId, p: &LaurentPoly, c: &LaurentPoly) {
        if p.is_zero() || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(w).or_default();
        slot.add_product_assign(p, c);
        if slot.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn add_vector(&mut self, other: &HeckeVector) {
        assert_eq!(
            self.basis, other.basis,
            "adding vectors over different bases"
        );
        for (w, c) in other.terms() {
            self.add_term(w, c);
        }
    }

    pub fn scaled(&self, p: &LaurentPoly) -> HeckeVector {
        let mut out = HeckeVector::zero(self.basis);
        for (w, c) in self.terms() {
            out.add_term_product(w, p, c);
        }
        out
    }

    /// Same coefficients, relabelled basis.
    pub fn relabel(mut self, basis: Basis) -> HeckeVector {
        self.basis = basis;
        self
    }

    /// Applies the bar involution to every coefficient only.
    pub fn bar_coefficients(&self) -> HeckeVector {
        HeckeVector {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|(&w, c)| (w, c.bar())).collect(),
        }
    }
}

/// Left multiplication by a standard generator in `H_q` (`p = q = v^2`) or
/// `H_{q^2}` (`p = v^4`), where `p = v^param`:
/// `t_s t_w = t_{sw}` if `sw > w`, else `p t_{sw} + (p - 1) t_w`.
fn standard_left_mul(g: &CoxeterGroup, s: usize, x: &HeckeVector, param: i32) -> HeckeVector {
    let mut out = HeckeVector::zero(x.basis);
    for (w, c) in x.terms() {
        let sw = g.lmul(s, w);
        if g.length(sw) > g.length(w) {
            out.add_term(sw, c);
        } else {
            out.add_term_scaled(sw, c, 1, param);
            out.add_term_scaled(w, c, 1, param);
            out.add_term_scaled(w, c, -1, 0);
        }
    }
    out
}

/// `t_s^{-1} = p^{-1} t_s + (p^{-1} - 1)`.
fn standard_left_mul_inverse(
    g: &CoxeterGroup,
    s: usize,
    x: &HeckeVector,
    param: i32,
) -> HeckeVector {
    let ts = standard_left_mul(g, s, x, param);
    let mut out = HeckeVector::zero(x.basis);
    for (w, c) in ts.terms() {
        out.add_term_scaled(w, c, 1, -param);
    }
    for (w, c) in x.terms() {
        out.add_term_scaled(w, c, 1, -param);
        out.add_term_scaled(w, c, -1, 0);
    }
    out
}

fn exponent(basis: Basis) -> i32 {
    match basis {
        Basis::SmallT => 2,
        Basis::BigT => 4,
        b => panic!("no standard-basis multiplication for {b:?}"),
    }
}

/// `t_s x` (or `T_s x`) for a vector over a standard algebra basis.
pub fn left_mul_generator(g: &CoxeterGroup, s: usize, x: &HeckeVector) -> HeckeVector {
    standard_left_mul(g, s, x, exponent(x.basis))
}

/// `t_s^{-1} x` (or `T_s^{-1} x`).
pub fn left_mul_generator_inverse(g: &CoxeterGroup, s: usize, x: &HeckeVector) -> HeckeVector {
    standard_left_mul_inverse(g, s, x, exponent(x.basis))
}

/// Product `x y` of two vectors over the same standard algebra basis.
pub fn multiply(g: &CoxeterGroup, x: &HeckeVector, y: &HeckeVector) -> HeckeVector {
    assert_eq!(x.basis, y.basis);
    let mut out = HeckeVector::zero(x.basis);
    for (u, c) in x.terms() {
        let mut acc = y.clone();
        for &s in g.word(u).iter().rev() {
            acc = left_mul_generator(g, s as usize, &acc);
        }
        out.add_vector(&acc.scaled(c));
    }
    out
}

/// `bar(t_w) = (t_{w^{-1}})^{-1}` expanded in the standard basis of `H_q`
/// (or of `H_{q^2}` for [`Basis::BigT`]).
pub fn bar_standard(g: &CoxeterGroup, basis: Basis, w: ElementId) -> HeckeVector {
    // (t_{w^{-1}})^{-1} = t_{s_1}^{-1} ... t_{s_k}^{-1} for w = s_1 ... s_k.
    let mut acc = HeckeVector::basis_element(basis, 0);
    for &s in g.word(w).iter().rev() {
        acc = left_mul_generator_inverse(g, s as usize, &acc);
    }
    acc
}

/// Bar involution of an arbitrary vector over a standard algebra basis.
pub fn bar_vector(g: &CoxeterGroup, x: &HeckeVector) -> HeckeVector {
    let mut out = HeckeVector::zero(x.basis);
    for (w, c) in x.terms() {
        out.add_vector(&bar_standard(g, x.basis, w).scaled(&c.bar()));
    }
    out
}

/// `T_s` acting on a vector in the `a`-basis of the module.
pub fn module_action(g: &CoxeterGroup, s: usize, x: &HeckeVector) -> HeckeVector {
    assert_eq!(x.basis, Basis::SmallA);
    let mut out = HeckeVector::zero(Basis::SmallA);
    for (w, c) in x.terms() {
        let u = g.ltimes(s, w);
        let up = g.length(u) > g.length(w);
        match (g.is_ltimes_short(s, w), up) {
            (false, true) => out.add_term(u, c),
            (true, true) => {
                // (q + 1) a_u + q a_w
                out.add_term_scaled(u, c, 1, 2);
                out.add_term(u, c);
                out.add_term_scaled(w, c, 1, 2);
            }
            (true, false) => {
                // (q^2 - q) a_u + (q^2 - q - 1) a_w
                out.add_term_scaled(u, c, 1, 4);
                out.add_term_scaled(u, c, -1, 2);
                out.add_term_scaled(w, c, 1, 4);
                out.add_term_scaled(w, c, -1, 2);
                out.add_term_scaled(w, c, -1, 0);
            }
            (false, false) => {
                // q^2 a_u + (q^2 - 1) a_w
                out.add_term_scaled(u, c, 1, 4);
                out.add_term_scaled(w, c, 1, 4);
                out.add_term_scaled(w, c, -1, 0);
            }
        }
    }
    out
}

/// `T_s^{-1} = q^{-2} T_s + (q^{-2} - 1)` acting on the module.
pub fn module_action_inverse(g: &CoxeterGroup, s: usize, x: &HeckeVector) -> HeckeVector {
    let ts = module_action(g, s, x);
    let mut out = HeckeVector::zero(Basis::SmallA);
    for (w, c) in ts.terms() {
        out.add_term_scaled(w, c, 1, -4);
    }
    for (w, c) in x.terms() {
        out.add_term_scaled(w, c, 1, -4);
        out.add_term_scaled(w, c, -1, 0);
    }
    out
}

/// `T_x` acting on a module vector.
pub fn module_act_element(g: &CoxeterGroup, x: ElementId, m: &HeckeVector) -> HeckeVector {
    let mut acc = m.clone();
    for &s in g.word(x).iter().rev() {
        acc = module_action(g, s as usize, &acc);
    }
    acc
}

/// An algebra vector over the `T`-basis acting on a module vector.
pub fn module_act(g: &CoxeterGroup, h: &HeckeVector, m: &HeckeVector) -> HeckeVector {
    assert_eq!(h.basis, Basis::BigT);
    let mut out = HeckeVector::zero(Basis::SmallA);
    for (x, c) in h.terms() {
        out.add_vector(&module_act_element(g, x, m).scaled(c));
    }
    out
}

/// `bar(a_w) = (-1)^{l(w)} (T_{w^{-1}})^{-1} a_{w^{-1}}`.
pub fn bar_a(g: &CoxeterGroup, w: ElementId) -> HeckeVector {
    let winv = g.inverse(w);
    let mut acc = HeckeVector::basis_element(Basis::SmallA, winv);
    for &s in g.word(w).iter().rev() {
        acc = module_action_inverse(g, s as usize, &acc);
    }
    if g.length(w) % 2 == 1 {
        acc = acc.scaled(&LaurentPoly::constant(-1));
    }
    acc
}

/// Bar involution of an arbitrary module vector.
pub fn bar_module_vector(g: &CoxeterGroup, x: &HeckeVector) -> HeckeVector {
    assert_eq!(x.basis, Basis::SmallA);
    let mut out = HeckeVector::zero(Basis::SmallA);
    for (w, c) in x.terms() {
        out.add_vector(&bar_a(g, w).scaled(&c.bar()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterSystem, TwistSpec};

    fn group(label: &str) -> CoxeterGroup {
        CoxeterSystem::from_label(label, TwistSpec::FromLabel)
            .unwrap()
            .enumerate()
            .unwrap()
    }

    fn q(k: i32) -> LaurentPoly {
        LaurentPoly::monomial(1, 2 * k)
    }

    #[test]
    fn module_action_cases() {
        let g = group("A2");
        let s1 = g.from_word(&[0]);
        let a1 = HeckeVector::basis_element(Basis::SmallA, 0);
        let out = module_action(&g, 0, &a1);
        assert_eq!(out.get(s1), &q(1) + &LaurentPoly::one());
        assert_eq!(out.get(0), q(1));

        let out = module_action(&g, 0, &HeckeVector::basis_element(Basis::SmallA, s1));
        assert_eq!(out.get(0), &q(2) - &q(1));
        assert_eq!(out.get(s1), &(&q(2) - &q(1)) - &LaurentPoly::one());

        let t = group("2A2");
        let out = module_action(&t, 0, &HeckeVector::basis_element(Basis::SmallA, 0));
        assert_eq!(
            out,
            HeckeVector::basis_element(Basis::SmallA, t.from_word(&[0, 1]))
        );
    }

    #[test]
    fn bar_examples() {
        let g = group("A1");
        assert_eq!(bar_a(&g, 0), HeckeVector::basis_element(Basis::SmallA, 0));
        // bar(a_s) = -T_s^{-1} a_s = v^-2 a_s + (v^-2 - 1) a_1
        let b = bar_a(&g, 1);
        assert_eq!(b.get(1), LaurentPoly::monomial(1, -2));
        assert_eq!(b.get(0), LaurentPoly::from_coeffs(-2, vec![1, 0, -1]));
    }

    #[test]
    fn bar_is_an_involution() {
        for label in ["A2", "2A2", "I2(4)", "2I2(4)", "BC3"] {
            let g = group(label);
            for &w in g.twisted_involutions() {
                let a = HeckeVector::basis_element(Basis::SmallA, w);
                assert_eq!(bar_module_vector(&g, &bar_a(&g, w)), a, "{label}");
            }
            for w in g.elements() {
                let t = HeckeVector::basis_element(Basis::SmallT, w);
                assert_eq!(bar_vector(&g, &bar_standard(&g, Basis::SmallT, w)), t);
            }
        }
    }

    #[test]
    fn module_quadratic_and_braid_relations() {
        for label in ["A3", "2A3", "BC3", "2I2(5)", "H3"] {
            let g = group(label);
            for &w in g.twisted_involutions() {
                let a = HeckeVector::basis_element(Basis::SmallA, w);
                for s in 0..g.rank() {
                    // (T_s + 1)(T_s - q^2) = 0
                    let x = module_action(&g, s, &a);
                    let mut y = x.clone();
                    y.add_vector(&a.scaled(&LaurentPoly::monomial(-1, 4)));
                    let mut z = module_action(&g, s, &y);
                    z.add_vector(&y);
                    assert!(z.is_zero(), "{label}");
                    for t in s + 1..g.rank() {
                        let m = g.system().m(s, t) as usize;
                        let word = |first: usize, second: usize| {
                            let mut acc = a.clone();
                            for i in 0..m {
                                let r = if i % 2 == 0 { second } else { first };
                                acc = module_action(&g, r, &acc);
                            }
                            acc
                        };
                        assert_eq!(word(s, t), word(t, s), "{label}");
                    }
                }
            }
        }
    }

    #[test]
    fn bar_is_compatible_with_the_action() {
        let g = group("2A3");
        for &w in g.twisted_involutions() {
            let a = HeckeVector::basis_element(Basis::SmallA, w);
            for s in 0..g.rank() {
                let lhs = bar_module_vector(&g, &module_action(&g, s, &a));
                let rhs = module_action_inverse(&g, s, &bar_a(&g, w));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
