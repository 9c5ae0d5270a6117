//! Integer Laurent polynomials in `v`, with `q = v^2`.
//!
//! Values are stored densely: a minimum exponent plus a coefficient vector
//! whose first and last entries are nonzero. The zero polynomial is the
//! empty vector and, by convention, has degree 0.
//!
//! Coefficients are `i128`; every arithmetic operation is overflow-checked.
//! The `try_*` methods surface overflow as [`LaurentError::Overflow`], while
//! the operator impls panic on it.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Coeff = i128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("coefficient overflow")]
    Overflow,
    #[error("halving produced a non-integral coefficient at v^{exponent}")]
    NonIntegral { exponent: i32 },
    #[error("division by q + 1 is not exact")]
    InexactDivision,
    #[error("polynomial is not in Z[q]")]
    NotInQ,
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    offset: i32,
    coeffs: Vec<Coeff>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^k`.
    pub fn monomial(c: Coeff, k: i32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        LaurentPoly {
            offset: k,
            coeffs: vec![c],
        }
    }

    /// `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    /// `u = v + v^{-1}`.
    pub fn u() -> Self {
        Self::from_coeffs(-1, vec![1, 0, 1])
    }

    /// Builds `sum_i coeffs[i] v^(offset + i)`, trimming zeros.
    pub fn from_coeffs(offset: i32, coeffs: Vec<Coeff>) -> Self {
        let mut p = LaurentPoly { offset, coeffs };
        p.normalize();
        p
    }

    /// Builds a polynomial in `q` from its coefficients `a_0 + a_1 q + ...`.
    pub fn from_q_coeffs(coeffs: &[Coeff]) -> Self {
        let mut dense = vec![0; coeffs.len().saturating_mul(2)];
        for (i, &c) in coeffs.iter().enumerate() {
            dense[2 * i] = c;
        }
        Self::from_coeffs(0, dense)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, Coeff)>>(terms: I) -> Self {
        let terms: Vec<(i32, Coeff)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs: Vec<Coeff> = vec![0; (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.checked_add(c).expect("coefficient overflow");
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn normalize(&mut self) {
        let Some(first) = self.coeffs.iter().position(|&c| c != 0) else {
            self.coeffs.clear();
            self.offset = 0;
            return;
        };
        let last = self.coeffs.iter().rposition(|&c| c != 0).unwrap();
        if first > 0 || last + 1 < self.coeffs.len() {
            self.coeffs.truncate(last + 1);
            self.coeffs.drain(..first);
        }
        self.offset += first as i32;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.offset == 0 && self.coeffs == [1]
    }

    /// Coefficient of `v^k`.
    pub fn coefficient(&self, k: i32) -> Coeff {
        let i = k as i64 - self.offset as i64;
        if i < 0 || i >= self.coeffs.len() as i64 {
            0
        } else {
            self.coeffs[i as usize]
        }
    }

    /// Maximal exponent of `v` (0 for the zero polynomial).
    pub fn degree(&self) -> i32 {
        if self.is_zero() {
            0
        } else {
            self.offset + self.coeffs.len() as i32 - 1
        }
    }

    /// Minimal exponent of `v` (0 for the zero polynomial).
    pub fn low_degree(&self) -> i32 {
        self.offset
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, Coeff)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.offset + i as i32, c))
    }

    pub fn is_nonneg(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Largest nonzero coefficient, if any.
    pub fn max_nonzero_coefficient(&self) -> Option<Coeff> {
        self.terms().map(|(_, c)| c).max()
    }

    /// Smallest nonzero coefficient, if any.
    pub fn min_nonzero_coefficient(&self) -> Option<Coeff> {
        self.terms().map(|(_, c)| c).min()
    }

    /// True when every exponent is even and nonnegative.
    pub fn is_polynomial_in_q(&self) -> bool {
        self.is_zero() || (self.offset >= 0 && self.terms().all(|(e, _)| e % 2 == 0))
    }

    /// Coefficients `a_0, a_1, ...` of the polynomial as an element of `Z[q]`.
    pub fn q_coefficients(&self) -> Result<Vec<Coeff>, LaurentError> {
        if !self.is_polynomial_in_q() {
            return Err(LaurentError::NotInQ);
        }
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let top = self.degree() / 2;
        Ok((0..=top).map(|i| self.coefficient(2 * i)).collect())
    }

    /// `v^d f` as q-coefficients, where `d = degree(f)`; `None` if that is not
    /// a polynomial in `q`.
    fn shifted_q_coefficients(&self) -> Option<Vec<Coeff>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        self.shift(self.degree()).q_coefficients().ok()
    }

    /// `f` is balanced when `v^d f` lies in `Z[q]` with a palindromic
    /// coefficient sequence of q-degree `d`.
    pub fn is_balanced(&self) -> bool {
        let Some(a) = self.shifted_q_coefficients() else {
            return false;
        };
        if a.is_empty() {
            return true;
        }
        let d = self.degree();
        if d < 0 || a.len() != d as usize + 1 {
            // v^d f has q-degree exactly d only when the lowest exponent is -d.
            return false;
        }
        a.iter().eq(a.iter().rev())
    }

    pub fn is_balanced_unimodal(&self) -> bool {
        if !self.is_balanced() {
            return false;
        }
        let a = self.shifted_q_coefficients().unwrap_or_default();
        is_unimodal(&a)
    }

    /// Checks membership in `Z[u^2]` or `u Z[u^2]` with `u = v + v^{-1}`:
    /// both are exactly the bar-symmetric polynomials supported on even
    /// (respectively odd) exponents.
    pub fn u_parity(&self) -> Option<UParity> {
        if self.is_zero() {
            return Some(UParity::Zero);
        }
        if self.offset != -self.degree() {
            return None;
        }
        if !self.coeffs.iter().eq(self.coeffs.iter().rev()) {
            return None;
        }
        let parity = self.degree().rem_euclid(2);
        if self.terms().any(|(e, _)| e.rem_euclid(2) != parity) {
            return None;
        }
        Some(if parity == 0 {
            UParity::Even
        } else {
            UParity::Odd
        })
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn try_scale(&self, c: Coeff) -> Result<Self, LaurentError> {
        if c == 0 || self.is_zero() {
            return Ok(Self::zero());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(LaurentError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPoly {
            offset: self.offset,
            coeffs,
        })
    }

    pub fn scale(&self, c: Coeff) -> Self {
        self.try_scale(c).expect("coefficient overflow")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.try_add_scaled(other, 1)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.try_add_scaled(other, -1)
    }

    /// `self + c * other`.
    pub fn try_add_scaled(&self, other: &Self, c: Coeff) -> Result<Self, LaurentError> {
        let mut out = self.clone();
        out.try_add_scaled_assign(other, c)?;
        Ok(out)
    }

    /// `self += c * other`.
    pub fn try_add_scaled_assign(&mut self, other: &Self, c: Coeff) -> Result<(), LaurentError> {
        if other.is_zero() || c == 0 {
            return Ok(());
        }
        if self.is_zero() {
            *self = other.try_scale(c)?;
            return Ok(());
        }
        let lo = self.offset.min(other.offset);
        let hi = self.degree().max(other.degree());
        if lo < self.offset || hi > self.degree() {
            let mut grown = vec![0; (hi - lo + 1) as usize];
            let start = (self.offset - lo) as usize;
            grown[start..start + self.coeffs.len()].copy_from_slice(&self.coeffs);
            self.coeffs = grown;
            self.offset = lo;
        }
        let start = (other.offset - self.offset) as usize;
        for (slot, &b) in self.coeffs[start..].iter_mut().zip(&other.coeffs) {
            let t = b.checked_mul(c).ok_or(LaurentError::Overflow)?;
            *slot = slot.checked_add(t).ok_or(LaurentError::Overflow)?;
        }
        self.normalize();
        Ok(())
    }

    /// `self += c * v^k * other`.
    pub fn add_scaled_shifted_assign(&mut self, other: &Self, c: Coeff, k: i32) {
        if other.is_zero() || c == 0 {
            return;
        }
        // Avoid materializing the shifted copy when the ranges already fit.
        if !self.is_zero() && other.offset + k >= self.offset && other.degree() + k <= self.degree()
        {
            let start = (other.offset + k - self.offset) as usize;
            for (slot, &b) in self.coeffs[start..].iter_mut().zip(&other.coeffs) {
                let t = b.checked_mul(c).expect("coefficient overflow");
                *slot = slot.checked_add(t).expect("coefficient overflow");
            }
            self.normalize();
            return;
        }
        self.try_add_scaled_assign(&other.shift(k), c)
            .expect("coefficient overflow");
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut coeffs = vec![0 as Coeff; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(LaurentError::Overflow)?;
                coeffs[i + j] = coeffs[i + j].checked_add(t).ok_or(LaurentError::Overflow)?;
            }
        }
        Ok(Self::from_coeffs(self.offset + other.offset, coeffs))
    }

    /// `self += a * b`.
    pub fn add_product_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if b.coeffs.len() == 1 {
            self.add_scaled_shifted_assign(a, b.coeffs[0], b.offset);
        } else if a.coeffs.len() == 1 {
            self.add_scaled_shifted_assign(b, a.coeffs[0], a.offset);
        } else {
            *self += &(a * b);
        }
    }

    /// The bar involution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            offset: -self.degree(),
            coeffs,
        }
    }

    /// `f(v^2)`: every exponent doubled.
    pub fn substitute_v2(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; 2 * self.coeffs.len() - 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c;
        }
        LaurentPoly {
            offset: 2 * self.offset,
            coeffs,
        }
    }

    /// Exact halving of every coefficient.
    pub fn try_half(&self) -> Result<Self, LaurentError> {
        if let Some((e, _)) = self.terms().find(|(_, c)| c % 2 != 0) {
            return Err(LaurentError::NonIntegral { exponent: e });
        }
        Ok(LaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| c / 2).collect(),
        })
    }

    /// `(f^+, f^-)` with `f^± = (f(v)^2 ± f(v^2)) / 2`.
    pub fn half_split(&self) -> Result<(Self, Self), LaurentError> {
        let square = self.try_mul(self)?;
        let doubled = self.substitute_v2();
        let plus = square.try_add(&doubled)?.try_half()?;
        let minus = square.try_sub(&doubled)?.try_half()?;
        Ok((plus, minus))
    }

    /// Value at `q = -1` (i.e. `v^2 = -1`); the polynomial must lie in `Z[q]`.
    pub fn eval_at_q_minus_one(&self) -> Result<Coeff, LaurentError> {
        let a = self.q_coefficients()?;
        let mut total: Coeff = 0;
        for (i, c) in a.into_iter().enumerate() {
            let term = if i % 2 == 0 { c } else { -c };
            total = total.checked_add(term).ok_or(LaurentError::Overflow)?;
        }
        Ok(total)
    }

    /// Exact quotient by `q + 1` for a polynomial in `Z[q]`.
    pub fn div_exact_by_q_plus_one(&self) -> Result<Self, LaurentError> {
        let a = self.q_coefficients()?;
        if a.is_empty() {
            return Ok(Self::zero());
        }
        // Synthetic division by q - (-1), from the top coefficient down.
        let n = a.len() - 1;
        let mut quotient = vec![0 as Coeff; n];
        let mut carry: Coeff = 0;
        for i in (1..=n).rev() {
            carry = a[i].checked_sub(carry).ok_or(LaurentError::Overflow)?;
            quotient[i - 1] = carry;
        }
        if a[0] != carry {
            return Err(LaurentError::InexactDivision);
        }
        Ok(Self::from_q_coeffs(&quotient))
    }

    /// Renders as a polynomial in `q` when possible, falling back to `v`.
    pub fn display_q(&self) -> String {
        match self.q_coefficients() {
            Ok(a) if !a.is_empty() => render(
                a.iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i as i32, c)),
                "q",
            ),
            _ => self.to_string(),
        }
    }
}

/// Parity class of an element of `Z[u^2] ∪ u Z[u^2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UParity {
    Zero,
    Even,
    Odd,
}

/// `0 <= a_0 <= ... <= a_i >= ... >= a_n >= 0` for some `i`.
pub fn is_unimodal(a: &[Coeff]) -> bool {
    if a.iter().any(|&c| c < 0) {
        return false;
    }
    let mut i = 0;
    while i + 1 < a.len() && a[i] <= a[i + 1] {
        i += 1;
    }
    while i + 1 < a.len() && a[i] >= a[i + 1] {
        i += 1;
    }
    i + 1 >= a.len()
}

fn render(terms: impl Iterator<Item = (i32, Coeff)>, var: &str) -> String {
    let mut out = String::new();
    for (e, c) in terms {
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let power = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if power.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag == 1 {
            out.push_str(&power);
        } else {
            out.push_str(&format!("{mag}{power}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.terms().collect();
        f.write_str(&render(terms.into_iter().rev(), "v"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("coefficient overflow")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("coefficient overflow")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("coefficient overflow")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.try_add_scaled_assign(rhs, 1)
            .expect("coefficient overflow");
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.try_add_scaled_assign(rhs, -1)
            .expect("coefficient overflow");
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

// JSON form: {"<exponent>": coefficient, ...} in increasing exponent order.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms().count()))?;
        for (e, c) in self.terms() {
            map.serialize_entry(&e.to_string(), &c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from exponent strings to integer coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentPoly, A::Error> {
                let mut terms = Vec::new();
                while let Some((k, c)) = access.next_entry::<String, Coeff>()? {
                    let e: i32 = k
                        .parse()
                        .map_err(|_| serde::de::Error::custom(format!("bad exponent {k:?}")))?;
                    terms.push((e, c));
                }
                Ok(LaurentPoly::from_terms(terms))
            }
        }
        deserializer.deserialize_map(PolyVisitor)
    }
}

/// Identifier of an interned polynomial.
pub type PolyId = u32;

/// Hash-consing pool: equal polynomials share one id.
///
/// Id 0 is always the zero polynomial and id 1 is always `1`. Insertion is
/// single-writer; parallel producers hand their results to the owner, which
/// interns them in a fixed order so ids are reproducible.
#[derive(Clone)]
pub struct PolyPool {
    polys: Vec<LaurentPoly>,
    index: HashMap<LaurentPoly, PolyId>,
}

impl PolyPool {
    pub const ZERO: PolyId = 0;
    pub const ONE: PolyId = 1;

    pub fn new() -> Self {
        let mut pool = PolyPool {
            polys: Vec::new(),
            index: HashMap::new(),
        };
        pool.intern(LaurentPoly::zero());
        pool.intern(LaurentPoly::one());
        pool
    }

    pub fn intern(&mut self, p: LaurentPoly) -> PolyId {
        if let Some(&id) = self.index.get(&p) {
            return id;
        }
        let id = self.polys.len() as PolyId;
        self.polys.push(p.clone());
        self.index.insert(p, id);
        id
    }

    pub fn get(&self, id: PolyId) -> &LaurentPoly {
        &self.polys[id as usize]
    }

    /// Number of distinct polynomials stored.
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl Default for PolyPool {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for PolyPool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyPool({} polynomials)", self.polys.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(offset: i32, c: &[Coeff]) -> LaurentPoly {
        LaurentPoly::from_coeffs(offset, c.to_vec())
    }

    #[test]
    fn ring_examples() {
        let u = LaurentPoly::u();
        assert_eq!(&u * &u, p(-2, &[1, 0, 2, 0, 1]));
        let f = p(-3, &[4, 0, -1]);
        assert_eq!(&f + &LaurentPoly::zero(), f);
        let one_q = &LaurentPoly::one() + &LaurentPoly::q();
        assert_eq!(&one_q * &one_q, LaurentPoly::from_q_coeffs(&[1, 2, 1]));
    }

    #[test]
    fn normalization_trims_zeros() {
        let f = p(-2, &[0, 0, 3, 0]);
        assert_eq!(f, LaurentPoly::constant(3));
        assert_eq!(p(5, &[0, 0]), LaurentPoly::zero());
        assert_eq!(LaurentPoly::zero().degree(), 0);
        let g = &LaurentPoly::v() - &LaurentPoly::v();
        assert!(g.is_zero());
        assert_eq!(g.low_degree(), 0);
    }

    #[test]
    fn substitute_examples() {
        let one_q = LaurentPoly::from_q_coeffs(&[1, 1]);
        assert_eq!(
            one_q.substitute_v2(),
            LaurentPoly::from_q_coeffs(&[1, 0, 1])
        );
        assert_eq!(LaurentPoly::u().substitute_v2(), p(-2, &[1, 0, 0, 0, 1]));
        assert!(LaurentPoly::zero().substitute_v2().is_zero());
    }

    #[test]
    fn predicates_and_coefficients() {
        assert!(LaurentPoly::from_q_coeffs(&[1, 1]).is_nonneg());
        assert!(!LaurentPoly::from_q_coeffs(&[-1, 1]).is_nonneg());
        assert_eq!(p(1, &[2, 0, 1]).coefficient(1), 2);
        assert_eq!(p(1, &[2, 0, 1]).coefficient(3), 1);
        assert_eq!(p(1, &[2, 0, 1]).coefficient(2), 0);
        assert_eq!(p(1, &[2, 0, 1]).degree(), 3);
    }

    #[test]
    fn balanced_examples() {
        assert!(LaurentPoly::u().is_balanced());
        assert!(p(-2, &[1, 0, 1, 0, 1]).is_balanced());
        assert!(!LaurentPoly::from_q_coeffs(&[1, 1]).is_balanced());
        assert!(LaurentPoly::one().is_balanced());
        assert!(!LaurentPoly::monomial(1, -1).is_balanced());
        assert!(!p(-1, &[1, 1, 1]).is_balanced());
    }

    #[test]
    fn balanced_unimodal_examples() {
        assert!(LaurentPoly::zero().is_balanced_unimodal());
        assert!(p(-2, &[1, 0, 2, 0, 1]).is_balanced_unimodal());
        assert!(!p(-2, &[1, 0, -2, 0, 1]).is_balanced_unimodal());
        assert!(!p(-4, &[2, 0, 1, 0, 2, 0, 1, 0, 2]).is_balanced_unimodal());
    }

    #[test]
    fn unimodal_sequences() {
        assert!(is_unimodal(&[]));
        assert!(is_unimodal(&[1, 3, 3, 2]));
        assert!(is_unimodal(&[0, 0, 1]));
        assert!(!is_unimodal(&[1, 0, 1]));
        assert!(!is_unimodal(&[2, -1]));
    }

    #[test]
    fn half_split_examples() {
        assert_eq!(
            LaurentPoly::one().half_split().unwrap(),
            (LaurentPoly::one(), LaurentPoly::zero())
        );
        let (plus, minus) = LaurentPoly::from_q_coeffs(&[1, 1]).half_split().unwrap();
        assert_eq!(plus, LaurentPoly::from_q_coeffs(&[1, 1, 1]));
        assert_eq!(minus, LaurentPoly::q());
        let (plus, minus) = LaurentPoly::u().half_split().unwrap();
        assert_eq!(plus, p(-2, &[1, 0, 1, 0, 1]));
        assert_eq!(minus, LaurentPoly::one());
    }

    #[test]
    fn halving_detects_odd_coefficients() {
        assert_eq!(
            p(0, &[2, 3]).try_half(),
            Err(LaurentError::NonIntegral { exponent: 1 })
        );
    }

    #[test]
    fn u_parity_classes() {
        assert_eq!(LaurentPoly::u().u_parity(), Some(UParity::Odd));
        assert_eq!(p(-2, &[1, 0, 5, 0, 1]).u_parity(), Some(UParity::Even));
        assert_eq!(LaurentPoly::zero().u_parity(), Some(UParity::Zero));
        assert_eq!(p(-1, &[1, 1, 1]).u_parity(), None);
        assert_eq!(p(-2, &[1, 0, 0, 0, 2]).u_parity(), None);
    }

    #[test]
    fn division_by_q_plus_one() {
        let f = LaurentPoly::from_q_coeffs(&[1, 2, 1]);
        assert_eq!(
            f.div_exact_by_q_plus_one().unwrap(),
            LaurentPoly::from_q_coeffs(&[1, 1])
        );
        assert_eq!(
            LaurentPoly::from_q_coeffs(&[1, 0, 1]).div_exact_by_q_plus_one(),
            Err(LaurentError::InexactDivision)
        );
        assert_eq!(
            LaurentPoly::from_q_coeffs(&[3, -1, 2]).eval_at_q_minus_one(),
            Ok(6)
        );
        assert_eq!(
            LaurentPoly::u().div_exact_by_q_plus_one(),
            Err(LaurentError::NotInQ)
        );
    }

    #[test]
    fn overflow_is_detected() {
        let big = LaurentPoly::constant(Coeff::MAX / 2 + 1);
        assert_eq!(big.try_add(&big), Err(LaurentError::Overflow));
        assert_eq!(big.try_mul(&big), Err(LaurentError::Overflow));
        // Magnitudes beyond 2^63 are representable.
        let c = LaurentPoly::constant(1 << 63);
        assert_eq!((&c + &c).coefficient(0), 1 << 64);
    }

    #[test]
    fn rendering() {
        assert_eq!(p(-2, &[1, 0, -2, 0, 1]).to_string(), "v^2 - 2 + v^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(
            LaurentPoly::from_q_coeffs(&[1, 0, 3]).display_q(),
            "3q^2 + 1"
        );
        assert_eq!(LaurentPoly::u().display_q(), "v + v^-1");
    }

    #[test]
    fn json_form() {
        let f = p(-1, &[2, 0, -7]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"-1":2,"1":-7}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn pool_interns() {
        let mut pool = PolyPool::new();
        assert_eq!(pool.intern(LaurentPoly::zero()), PolyPool::ZERO);
        assert_eq!(pool.intern(LaurentPoly::one()), PolyPool::ONE);
        let a = pool.intern(LaurentPoly::u());
        let b = pool.intern(&LaurentPoly::v() + &LaurentPoly::monomial(1, -1));
        assert_eq!(a, b);
        assert_eq!(pool.len(), 3);
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        (-4i32..4, prop::collection::vec(-6i128..6, 0..6))
            .prop_map(|(o, c)| LaurentPoly::from_coeffs(o, c))
    }

    fn nonneg_poly() -> impl Strategy<Value = LaurentPoly> {
        (-4i32..4, prop::collection::vec(0i128..6, 0..6))
            .prop_map(|(o, c)| LaurentPoly::from_coeffs(o, c))
    }

    /// Balanced unimodal polynomials of v-degree d: v^{-d} times a symmetric
    /// unimodal polynomial in q of degree d.
    fn balanced_unimodal_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(0i128..4, 1..4).prop_map(|steps| {
            let mut half: Vec<Coeff> = Vec::new();
            let mut acc = 0;
            for s in steps {
                acc += s;
                half.push(acc.max(1));
            }
            let mut full = half.clone();
            let odd = half.len() % 2 == 1;
            let mirror: Vec<_> = half.iter().rev().skip(usize::from(odd)).copied().collect();
            full.extend(mirror);
            let d = full.len() as i32 - 1;
            LaurentPoly::from_q_coeffs(&full).shift(-d)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn substitution_is_multiplicative(a in small_poly(), b in small_poly()) {
            prop_assert_eq!((&a * &b).substitute_v2(), &a.substitute_v2() * &b.substitute_v2());
        }

        #[test]
        fn bar_is_an_involutive_ring_map(a in small_poly(), b in small_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn half_split_is_integral_and_recombines(f in small_poly()) {
            let (plus, minus) = f.half_split().unwrap();
            prop_assert_eq!(&plus + &minus, &f * &f);
            prop_assert_eq!(&plus - &minus, f.substitute_v2());
        }

        #[test]
        fn half_split_preserves_nonnegativity(f in nonneg_poly()) {
            let (plus, minus) = f.half_split().unwrap();
            prop_assert!(plus.is_nonneg());
            prop_assert!(minus.is_nonneg());
        }

        #[test]
        fn half_split_preserves_balanced_unimodality(f in balanced_unimodal_poly()) {
            prop_assert!(f.is_balanced_unimodal());
            let (plus, minus) = f.half_split().unwrap();
            prop_assert!(plus.is_balanced_unimodal(), "{} -> {}", f, plus);
            prop_assert!(minus.is_balanced_unimodal(), "{} -> {}", f, minus);
        }

        #[test]
        fn balanced_unimodal_closed_under_products_and_sums(
            f in balanced_unimodal_poly(),
            g in balanced_unimodal_poly(),
        ) {
            prop_assert!((&f * &g).is_balanced_unimodal());
            if (f.degree() - g.degree()) % 2 == 0 {
                prop_assert!((&f + &g).is_balanced_unimodal());
            }
        }

        #[test]
        fn q_plus_one_division_inverts_multiplication(coeffs in prop::collection::vec(-5i128..5, 0..5)) {
            let f = LaurentPoly::from_q_coeffs(&coeffs);
            let g = &f * &LaurentPoly::from_q_coeffs(&[1, 1]);
            prop_assert_eq!(g.div_exact_by_q_plus_one().unwrap(), f);
            prop_assert_eq!(g.eval_at_q_minus_one().unwrap(), 0);
        }
    }
}
