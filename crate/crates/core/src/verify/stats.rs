use std::fmt;

use serde::{Serialize, Serializer};

use crate::kl::ConstantsTable;
use crate::laurent::{Coeff, LaurentPoly};
use crate::twisted::{PairTable, SigmaTable, SplitConstants, SplitPolys};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "P^sigma")]
    PSigma,
    #[serde(rename = "P^+")]
    PPlus,
    #[serde(rename = "P^-")]
    PMinus,
    #[serde(rename = "h~")]
    HTilde,
    #[serde(rename = "h^sigma")]
    HSigma,
    #[serde(rename = "h^+")]
    HPlus,
    #[serde(rename = "h^-")]
    HMinus,
}

/// A maximum over nonzero coefficients; `AllZero` when there are none.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatCell {
    Value(Coeff),
    AllZero,
}

impl fmt::Display for StatCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatCell::Value(c) => write!(f, "{c}"),
            StatCell::AllZero => f.write_str("all polynomials zero"),
        }
    }
}

impl Serialize for StatCell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            StatCell::Value(c) => s.serialize_i128(*c),
            StatCell::AllZero => s.serialize_str("all polynomials zero"),
        }
    }
}

/// Maximum nonzero coefficient of a family; for the sigma families also the
/// maximum nonzero coefficient of the negated family, which is negative
/// when every coefficient is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StatsRow {
    pub family: Family,
    pub max: StatCell,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negated_max: Option<StatCell>,
}

impl StatsRow {
    fn scan<'a>(
        family: Family,
        polys: impl Iterator<Item = &'a LaurentPoly>,
        negated: bool,
    ) -> Self {
        let (mut hi, mut lo) = (None::<Coeff>, None::<Coeff>);
        for p in polys {
            for (_, c) in p.terms() {
                hi = Some(hi.map_or(c, |h| h.max(c)));
                lo = Some(lo.map_or(c, |l| l.min(c)));
            }
        }
        let cell = |v: Option<Coeff>| v.map_or(StatCell::AllZero, StatCell::Value);
        StatsRow {
            family,
            max: cell(hi),
            negated_max: negated.then(|| cell(lo.map(|l| -l))),
        }
    }

    /// The row's cells in table order.
    pub fn cells(&self) -> impl Iterator<Item = StatCell> {
        std::iter::once(self.max).chain(self.negated_max)
    }
}

/// `P` restricted to twisted involutions, `P^sigma` (and its negation),
/// `P^+`, `P^-`.
pub fn polynomial_stats(
    restricted: &PairTable,
    sigma: &SigmaTable,
    split: &SplitPolys,
) -> Vec<StatsRow> {
    fn pairs(t: &PairTable) -> impl Iterator<Item = &LaurentPoly> {
        t.iter().map(|e| e.2)
    }
    vec![
        StatsRow::scan(Family::P, pairs(restricted), false),
        StatsRow::scan(Family::PSigma, pairs(sigma.pairs()), true),
        StatsRow::scan(Family::PPlus, pairs(&split.plus), false),
        StatsRow::scan(Family::PMinus, pairs(&split.minus), false),
    ]
}

/// `h~`, `h^sigma` (and its negation), `h^+`, `h^-`.
pub fn constant_stats(
    htilde: &ConstantsTable,
    hsigma: &ConstantsTable,
    split: &SplitConstants,
) -> Vec<StatsRow> {
    fn entries(t: &ConstantsTable) -> impl Iterator<Item = &LaurentPoly> {
        t.iter().map(|e| e.3)
    }
    vec![
        StatsRow::scan(Family::HTilde, entries(htilde), false),
        StatsRow::scan(Family::HSigma, entries(hsigma), true),
        StatsRow::scan(Family::HPlus, entries(&split.plus), false),
        StatsRow::scan(Family::HMinus, entries(&split.minus), false),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negated_column_of_nonnegative_family() {
        let polys = [LaurentPoly::one(), LaurentPoly::from_q_coeffs(&[1, 2])];
        let row = StatsRow::scan(Family::PSigma, polys.iter(), true);
        assert_eq!(row.max, StatCell::Value(2));
        assert_eq!(row.negated_max, Some(StatCell::Value(-1)));
        let empty = StatsRow::scan(Family::PMinus, [].iter(), false);
        assert_eq!(empty.max, StatCell::AllZero);
        assert_eq!(empty.max.to_string(), "all polynomials zero");
    }
}
