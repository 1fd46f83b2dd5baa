//! Run-length oracles for the three known slow solutions of Golomb-like
//! systems, and the growth-ratio check against `sqrt((d_f + d_g) n)`.
//!
//! A slow solution is non-decreasing, so once the multiplicity of every value
//! is known the sequence is fully determined: write each value, in increasing
//! order, as many times as it occurs. The oracles here are built that way and
//! never touch the system evaluator.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::system::{eval_system_int, Component, GolombSystemSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SlowSolutionOracle {
    /// `f = g(n - g(n-1))`, `g = f(n - f(n)) + 1`, `f(1) = 0`.
    Fg1,
    /// `f = g(n - g(n-1))`, `g = f(n - f(n)) + 2`.
    Fg2,
    /// `f = g(n - g(n-1)) + 1`, `g = f(n - f(n)) + 2`.
    Fg12,
}

impl SlowSolutionOracle {
    pub const ALL: [SlowSolutionOracle; 3] = [Self::Fg1, Self::Fg2, Self::Fg12];

    /// How many times `value` occurs in the chosen sequence.
    pub fn multiplicity(self, which: Component, value: i64) -> u64 {
        use Component::{F, G};
        if value < 0 {
            return 0;
        }
        let i = value as u64;
        match (self, which) {
            (Self::Fg1, F) => 2 * i + 1,
            (Self::Fg1, G) => 2 * i,

            (Self::Fg2, F) => match i {
                0 => 1,
                1 => 4,
                _ if i.is_multiple_of(2) => 1,
                _ => 2 * i + 1,
            },
            (Self::Fg2, G) => match i {
                0 => 0,
                1 => 2,
                _ if i.is_multiple_of(2) => 1,
                _ => 2 * i - 1,
            },

            (Self::Fg12, F) => match (i, i % 3) {
                (0, _) => 1,
                (1, _) => 2,
                (_, 0) => 1,
                (_, 1) => 2 * i - 1,
                _ => 2,
            },
            (Self::Fg12, G) => match (i, i % 3) {
                (0, _) => 0,
                (1, _) => 2,
                (_, 0) => 2 * i - 2,
                (_, 1) => 2,
                _ => 1,
            },
        }
    }

    /// The system and initial conditions under which this solution arises.
    pub fn setup(self) -> (GolombSystemSpec, Vec<i64>, Vec<i64>) {
        match self {
            Self::Fg1 => (
                GolombSystemSpec {
                    c_f: 0,
                    d_f: 0,
                    c_g: 0,
                    d_g: 1,
                },
                vec![0],
                vec![],
            ),
            Self::Fg2 => (
                GolombSystemSpec {
                    c_f: 0,
                    d_f: 0,
                    c_g: 0,
                    d_g: 2,
                },
                vec![0, 1, 1],
                vec![1, 1, 2],
            ),
            Self::Fg12 => (
                GolombSystemSpec {
                    c_f: 0,
                    d_f: 1,
                    c_g: 0,
                    d_g: 2,
                },
                vec![0, 1, 1],
                vec![1, 1, 2],
            ),
        }
    }

    pub fn system(self) -> GolombSystemSpec {
        self.setup().0
    }

    /// Terms of the chosen sequence, from index 1.
    pub fn terms(self, which: Component) -> OracleTerms {
        OracleTerms {
            oracle: self,
            which,
            value: 0,
            left: self.multiplicity(which, 0),
        }
    }
}

impl fmt::Display for SlowSolutionOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Fg1 => "fg1",
            Self::Fg2 => "fg2",
            Self::Fg12 => "fg12",
        })
    }
}

impl FromStr for SlowSolutionOracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fg1" => Ok(Self::Fg1),
            "fg2" => Ok(Self::Fg2),
            "fg12" => Ok(Self::Fg12),
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }
}

/// Infinite run-length iterator over one oracle sequence.
#[derive(Debug, Clone)]
pub struct OracleTerms {
    oracle: SlowSolutionOracle,
    which: Component,
    value: i64,
    left: u64,
}

impl Iterator for OracleTerms {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        while self.left == 0 {
            self.value += 1;
            self.left = self.oracle.multiplicity(self.which, self.value);
        }
        self.left -= 1;
        Some(self.value)
    }
}

/// The `n`-th term (1-indexed) of an oracle sequence.
pub fn oracle_term(oracle: SlowSolutionOracle, which: Component, n: u64) -> i64 {
    assert!(n >= 1, "oracle sequences are 1-indexed");
    let mut seen = 0u64;
    let mut value = 0i64;
    loop {
        seen += oracle.multiplicity(which, value);
        if seen >= n {
            return value;
        }
        value += 1;
    }
}

/// Closed form of the first slow solution's f: `ceil(sqrt(n)) - 1`.
pub fn fg1_f_closed(n: u64) -> i64 {
    (n - 1).isqrt() as i64
}

/// Closed form of the first slow solution's g: `floor(sqrt(n) + 1/2)`.
pub fn fg1_g_closed(n: u64) -> i64 {
    ((4 * n).isqrt().div_ceil(2)) as i64
}

/// First index at or below `limit` where a closed form disagrees with the
/// run-length construction.
pub fn fg1_closed_form_mismatch(limit: u64) -> Option<(Component, u64)> {
    for (which, closed) in [
        (Component::F, fg1_f_closed as fn(u64) -> i64),
        (Component::G, fg1_g_closed),
    ] {
        let runs = SlowSolutionOracle::Fg1.terms(which);
        if let Some(n) = (1..=limit)
            .zip(runs)
            .find(|&(n, v)| closed(n) != v)
            .map(|(n, _)| n)
        {
            return Some((which, n));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub which: Component,
    pub index: u64,
    pub expected: i64,
    /// `None` when the evaluated term is non-integer.
    pub actual: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub oracle: SlowSolutionOracle,
    pub limit: u64,
    pub first_mismatch: Option<Mismatch>,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Evaluates the system through `limit` and compares both sequences to the
/// oracle term by term. A dead system is an error.
pub fn verify_oracle(
    sys: &GolombSystemSpec,
    ic_f: &[i64],
    ic_g: &[i64],
    oracle: SlowSolutionOracle,
    limit: u64,
) -> Result<OracleCheck> {
    let (buf, outcome) = eval_system_int(sys, ic_f, ic_g, limit)?;
    if let Some(d) = outcome.death() {
        return Err(Error::Dead {
            death_index: d.death_index,
        });
    }
    let mut first_mismatch = None;
    'outer: for which in [Component::F, Component::G] {
        for (n, expected) in (1..=limit).zip(oracle.terms(which)) {
            let actual = buf.get_int(which, n as i64);
            if actual != Some(expected) {
                first_mismatch = Some(Mismatch {
                    which,
                    index: n,
                    expected,
                    actual,
                });
                break 'outer;
            }
        }
    }
    Ok(OracleCheck {
        oracle,
        limit,
        first_mismatch,
    })
}

/// `f(n) / sqrt((d_f + d_g) n)`.
pub fn growth_ratio(sys: &GolombSystemSpec, ic_f: &[i64], ic_g: &[i64], n: u64) -> Result<f64> {
    sys.validate()?;
    let (buf, outcome) = eval_system_int(sys, ic_f, ic_g, n)?;
    if let Some(d) = outcome.death() {
        return Err(Error::Dead {
            death_index: d.death_index,
        });
    }
    let f = buf.f(n as i64).ok_or(Error::OutOfRange {
        index: n as i64,
        first: 1,
        last: buf.f_len() as i64,
    })?;
    let value = *f.numer() as f64 / *f.denom() as f64;
    Ok(value / ((sys.growth_constant() as f64) * n as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Component::{F, G};
    use SlowSolutionOracle::*;

    #[test]
    fn term_examples() {
        assert_eq!(oracle_term(Fg1, F, 1), 0);
        assert_eq!(oracle_term(Fg1, G, 3), 2);
        assert_eq!(oracle_term(Fg1, F, 10), 3);
        assert_eq!(oracle_term(Fg2, F, 1), 0);
        assert_eq!(oracle_term(Fg2, G, 3), 2);
    }

    #[test]
    fn iterator_matches_term_lookup() {
        for o in SlowSolutionOracle::ALL {
            for which in [F, G] {
                for (n, v) in (1..=500u64).zip(o.terms(which)) {
                    assert_eq!(oracle_term(o, which, n), v, "{o} {which:?} {n}");
                }
            }
        }
    }

    #[test]
    fn prefixes_agree_with_initial_conditions() {
        for o in SlowSolutionOracle::ALL {
            let (_, f, g) = o.setup();
            assert_eq!(o.terms(F).take(f.len()).collect::<Vec<_>>(), f);
            assert_eq!(o.terms(G).take(g.len()).collect::<Vec<_>>(), g);
        }
        assert_eq!(
            Fg2.terms(F).take(12).collect::<Vec<_>>(),
            vec![0, 1, 1, 1, 1, 2, 3, 3, 3, 3, 3, 3]
        );
        assert_eq!(
            Fg12.terms(G).take(10).collect::<Vec<_>>(),
            vec![1, 1, 2, 3, 3, 3, 3, 4, 4, 5]
        );
    }

    #[test]
    fn closed_forms_small() {
        assert_eq!(fg1_closed_form_mismatch(100_000), None);
        assert_eq!(fg1_g_closed(1), 1);
        assert_eq!(fg1_g_closed(2), 1);
        assert_eq!(fg1_g_closed(3), 2);
    }

    #[test]
    fn verify_small() {
        for o in SlowSolutionOracle::ALL {
            let (sys, f, g) = o.setup();
            assert!(
                verify_oracle(&sys, &f, &g, o, 5_000).unwrap().passed(),
                "{o}"
            );
        }
    }

    #[test]
    fn wrong_oracle_is_detected_early() {
        let (sys, f, g) = Fg1.setup();
        let check = verify_oracle(&sys, &f, &g, Fg2, 100).unwrap();
        let m = check.first_mismatch.unwrap();
        assert!(m.index <= 10, "{m:?}");
    }

    #[test]
    fn dead_system_is_an_error() {
        let sys = GolombSystemSpec::new(0, 0, 0, 1).unwrap();
        assert!(matches!(
            verify_oracle(&sys, &[0], &[0], Fg1, 10),
            Err(Error::Dead { .. })
        ));
        assert!(matches!(
            growth_ratio(&sys, &[0], &[0], 10),
            Err(Error::Dead { .. })
        ));
    }

    #[test]
    fn growth_ratio_zero_term() {
        let (sys, f, g) = Fg1.setup();
        assert_eq!(growth_ratio(&sys, &f, &g, 1).unwrap(), 0.0);
        let r = growth_ratio(&sys, &f, &g, 10_000).unwrap();
        assert!((r - 0.99).abs() < 1e-12, "{r}");
    }

    #[test]
    fn parse_names() {
        assert_eq!("FG12".parse::<SlowSolutionOracle>().unwrap(), Fg12);
        assert!("fg3".parse::<SlowSolutionOracle>().is_err());
    }
}
