//! Property checks, independent oracles and coefficient statistics.
//!
//! Every check returns a [`PropertyReport`]. A failing report carries the
//! first failing key under the check's iteration order together with the
//! offending polynomial, so the failure can be reproduced by direct lookup.

use std::fmt;

use serde::Serialize;

use crate::coxeter::ElementId;
use crate::laurent::LaurentPoly;

mod oracles;
mod properties;
mod stats;

pub use oracles::{
    bar_oracle_a, bar_oracle_c, check_bar_oracles, check_h_definition, check_hsigma_definition,
    check_star_symmetry, factorization_oracle, product_case_oracle, BarOracle, OracleError,
    ProductCaseReport, DEFAULT_ORACLE_LIMIT,
};
pub use properties::{
    bruhat_covers, check_a, check_a_prime, check_b, check_b_prime, check_c, check_c_prime, check_d,
    check_d_prime, check_nonnegative, check_parity, check_unimodal, is_unimodal_in_q,
};
pub use stats::{constant_stats, polynomial_stats, Family, StatCell, StatsRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Which family the polynomial belongs to, when a check spans several.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// Element indices in the order the check names them.
    pub key: Vec<ElementId>,
    pub poly: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub check: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Number of entries or comparisons examined.
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyReport {
    pub fn from_scan(check: impl Into<String>, checked: u64, witness: Option<Witness>) -> Self {
        PropertyReport {
            check: check.into(),
            verdict: if witness.is_some() {
                Verdict::Fails
            } else {
                Verdict::Holds
            },
            witness,
            checked,
            note: None,
        }
    }

    pub fn skipped(check: impl Into<String>, note: impl Into<String>) -> Self {
        PropertyReport {
            check: check.into(),
            verdict: Verdict::Skipped,
            witness: None,
            checked: 0,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "FAILS",
            Verdict::Skipped => "skipped",
        };
        write!(f, "{}: {verdict} ({} checked)", self.check, self.checked)?;
        if let Some(w) = &self.witness {
            write!(f, "; witness")?;
            if let Some(fam) = &w.family {
                write!(f, " {fam}")?;
            }
            write!(f, " at {:?}: {}", w.key, w.poly)?;
        }
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        Ok(())
    }
}
