//! Single-sequence nested recurrences of the form
//!
//! ```text
//! a(n) = c + sum_j a(n - p_j - a(n - q_j))
//! ```
//!
//! This shape covers Hofstadter's Q and V, the companion H, the two-parameter
//! Q_{r,s} family, the three-term B_A, the shifted L_A and Golomb's G.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One summand `a(n - outer - a(n - inner))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(u64, u64)", into = "(u64, u64)")]
pub struct Term {
    pub outer_shift: u64,
    pub inner_shift: u64,
}

impl From<(u64, u64)> for Term {
    fn from((outer_shift, inner_shift): (u64, u64)) -> Self {
        Term {
            outer_shift,
            inner_shift,
        }
    }
}

impl From<Term> for (u64, u64) {
    fn from(t: Term) -> Self {
        (t.outer_shift, t.inner_shift)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct RecurrenceSpec {
    terms: Vec<Term>,
    constant: i64,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    #[serde(default)]
    constant: i64,
    terms: Vec<(u64, u64)>,
}

impl TryFrom<RawSpec> for RecurrenceSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        RecurrenceSpec::new(
            raw.terms.into_iter().map(Term::from).collect(),
            raw.constant,
        )
    }
}

impl From<RecurrenceSpec> for RawSpec {
    fn from(spec: RecurrenceSpec) -> Self {
        RawSpec {
            constant: spec.constant,
            terms: spec.terms.into_iter().map(Into::into).collect(),
        }
    }
}

impl RecurrenceSpec {
    pub fn new(terms: Vec<Term>, constant: i64) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidSpec("no summands".into()));
        }
        if let Some(t) = terms.iter().find(|t| t.inner_shift == 0) {
            return Err(Error::InvalidSpec(format!(
                "inner shift must be at least 1 (term ({}, {}))",
                t.outer_shift, t.inner_shift
            )));
        }
        Ok(RecurrenceSpec { terms, constant })
    }

    fn from_pairs(pairs: &[(u64, u64)], constant: i64) -> Self {
        Self::new(pairs.iter().copied().map(Term::from).collect(), constant)
            .expect("built-in recurrence is valid")
    }

    /// Hofstadter's V: `V(n) = V(n - V(n-1)) + V(n - V(n-4))`.
    pub fn v() -> Self {
        Self::from_pairs(&[(0, 1), (0, 4)], 0)
    }

    /// The companion `H(n) = H(n - H(n-2)) + H(n - H(n-3))`.
    pub fn h() -> Self {
        Self::from_pairs(&[(0, 2), (0, 3)], 0)
    }

    /// Hofstadter's Q.
    pub fn q() -> Self {
        Self::from_pairs(&[(0, 1), (0, 2)], 0)
    }

    /// Hofstadter-Huber `Q_{r,s}(n) = Q(n - Q(n-r)) + Q(n - Q(n-s))`.
    pub fn q_rs(r: u64, s: u64) -> Result<Self> {
        Self::new(vec![(0, r).into(), (0, s).into()], 0)
    }

    pub fn b_a() -> Self {
        Self::from_pairs(&[(0, 1), (0, 2), (0, 3)], 0)
    }

    /// `L_A(n) = L_A(n - 19 - L_A(n-3)) + L_A(n - 28 - L_A(n-12))`.
    pub fn l_a() -> Self {
        Self::from_pairs(&[(19, 3), (28, 12)], 0)
    }

    /// Golomb's `G(n) = G(n - G(n-1)) + 1`.
    pub fn golomb() -> Self {
        Self::from_pairs(&[(0, 1)], 1)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn constant(&self) -> i64 {
        self.constant
    }

    /// Largest inner shift; an initial condition at least this long keeps
    /// every inner lookup in range.
    pub fn max_inner_shift(&self) -> u64 {
        self.terms.iter().map(|t| t.inner_shift).max().unwrap_or(1)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    /// Looks up one of the named recurrences `V`, `H`, `Q`, `BA`, `LA`, `G`.
    pub fn named(name: &str) -> Option<Self> {
        match name.to_ascii_uppercase().as_str() {
            "V" => Some(Self::v()),
            "H" => Some(Self::h()),
            "Q" => Some(Self::q()),
            "BA" | "B_A" => Some(Self::b_a()),
            "LA" | "L_A" => Some(Self::l_a()),
            "G" => Some(Self::golomb()),
            _ => None,
        }
    }
}

impl FromStr for RecurrenceSpec {
    type Err = Error;

    /// Accepts either a named recurrence or an inline JSON object.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            Self::from_json(s)
        } else {
            Self::named(s).ok_or_else(|| Error::InvalidSpec(format!("unknown recurrence '{s}'")))
        }
    }
}

impl fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a(n) = ")?;
        if self.constant != 0 {
            write!(f, "{} + ", self.constant)?;
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.outer_shift == 0 {
                write!(f, "a(n - a(n - {}))", t.inner_shift)?;
            } else {
                write!(f, "a(n - {} - a(n - {}))", t.outer_shift, t.inner_shift)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodings() {
        let pairs = |s: &RecurrenceSpec| -> Vec<(u64, u64)> {
            s.terms().iter().map(|&t| t.into()).collect()
        };
        assert_eq!(pairs(&RecurrenceSpec::v()), vec![(0, 1), (0, 4)]);
        assert_eq!(pairs(&RecurrenceSpec::h()), vec![(0, 2), (0, 3)]);
        assert_eq!(pairs(&RecurrenceSpec::q()), vec![(0, 1), (0, 2)]);
        assert_eq!(pairs(&RecurrenceSpec::b_a()), vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(pairs(&RecurrenceSpec::l_a()), vec![(19, 3), (28, 12)]);
        assert_eq!(pairs(&RecurrenceSpec::golomb()), vec![(0, 1)]);
        assert_eq!(RecurrenceSpec::golomb().constant(), 1);
        assert_eq!(RecurrenceSpec::q_rs(1, 4).unwrap(), RecurrenceSpec::v());
    }

    #[test]
    fn rejects_invalid() {
        assert!(RecurrenceSpec::new(vec![], 0).is_err());
        assert!(RecurrenceSpec::new(vec![(0, 0).into()], 0).is_err());
        assert!(RecurrenceSpec::from_json(r#"{"constant": 0, "terms": []}"#).is_err());
        assert!(RecurrenceSpec::from_json(r#"{"terms": [[1, 0]]}"#).is_err());
    }

    #[test]
    fn json_and_names() {
        let spec = RecurrenceSpec::from_json(r#"{"constant": 0, "terms": [[0,1],[0,4]]}"#).unwrap();
        assert_eq!(spec, RecurrenceSpec::v());
        assert_eq!(RecurrenceSpec::from_json(&spec.to_json()).unwrap(), spec);
        assert_eq!(
            "la".parse::<RecurrenceSpec>().unwrap(),
            RecurrenceSpec::l_a()
        );
        assert_eq!(
            r#"{"terms": [[0, 1]], "constant": 1}"#.parse::<RecurrenceSpec>().unwrap(),
            RecurrenceSpec::golomb()
        );
        assert!("nope".parse::<RecurrenceSpec>().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            RecurrenceSpec::l_a().to_string(),
            "a(n) = a(n - 19 - a(n - 3)) + a(n - 28 - a(n - 12))"
        );
        assert_eq!(
            RecurrenceSpec::golomb().to_string(),
            "a(n) = 1 + a(n - a(n - 1))"
        );
    }
}
