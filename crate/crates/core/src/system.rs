//! Golomb-like systems of two mutually recursive sequences:
//!
//! ```text
//! f(n) = g(n - g(n-1) - c_f) + d_f
//! g(n) = f(n - f(n) - c_g) + d_g
//! ```
//!
//! Terms are exact rationals because initial conditions extracted from a
//! quasi-periodic V/H solution need not be integers. A non-integer term is
//! fine as a value but kills the system the moment it is used to build an
//! index.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{Death, EvalOutcome, Status, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GolombSystemSpec {
    pub c_f: i64,
    pub d_f: i64,
    pub c_g: i64,
    pub d_g: i64,
}

impl GolombSystemSpec {
    pub fn new(c_f: i64, d_f: i64, c_g: i64, d_g: i64) -> Result<Self> {
        let spec = GolombSystemSpec { c_f, d_f, c_g, d_g };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let total = self
            .d_f
            .checked_add(self.d_g)
            .ok_or(Error::Overflow { index: 0 })?;
        if total <= 0 {
            return Err(Error::InvalidSystem(total));
        }
        Ok(())
    }

    /// `d_f + d_g`, the constant in the conjectured growth rate.
    pub fn growth_constant(&self) -> i64 {
        self.d_f + self.d_g
    }
}

/// Which sequence of a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    F,
    G,
}

/// Terms of both sequences, 1-indexed. Always returned frozen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemBuffer {
    f: Vec<Rational64>,
    g: Vec<Rational64>,
    ic_len_f: usize,
    ic_len_g: usize,
}

impl SystemBuffer {
    pub fn f(&self, n: i64) -> Option<Rational64> {
        at(&self.f, n)
    }

    pub fn g(&self, n: i64) -> Option<Rational64> {
        at(&self.g, n)
    }

    pub fn get(&self, which: Component, n: i64) -> Option<Rational64> {
        match which {
            Component::F => self.f(n),
            Component::G => self.g(n),
        }
    }

    /// Term as an integer, if it is defined and has denominator 1.
    pub fn get_int(&self, which: Component, n: i64) -> Option<i64> {
        self.get(which, n)
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    pub fn f_len(&self) -> usize {
        self.f.len()
    }

    pub fn g_len(&self) -> usize {
        self.g.len()
    }

    pub fn ic_len_f(&self) -> usize {
        self.ic_len_f
    }

    pub fn ic_len_g(&self) -> usize {
        self.ic_len_g
    }

    /// Integer terms of one sequence; `None` if any term is non-integer.
    pub fn integers(&self, which: Component) -> Option<Vec<i64>> {
        let terms = match which {
            Component::F => &self.f,
            Component::G => &self.g,
        };
        terms
            .iter()
            .map(|r| r.is_integer().then(|| r.to_integer()))
            .collect()
    }
}

fn at(v: &[Rational64], n: i64) -> Option<Rational64> {
    if n < 1 {
        return None;
    }
    v.get((n - 1) as usize).copied()
}

fn plus_int(r: Rational64, d: i64, n: i64) -> Result<Rational64> {
    let numer = d
        .checked_mul(*r.denom())
        .and_then(|x| x.checked_add(*r.numer()))
        .ok_or(Error::Overflow { index: n as u64 })?;
    Ok(Rational64::new_raw(numer, *r.denom()))
}

fn system_death(n: i64, arg: i64, which: Component, inner: bool, violation: Violation) -> Status {
    Status::Dead(Death {
        death_index: n as u64,
        offending_argument: arg,
        offending_term_index: match which {
            Component::F => 0,
            Component::G => 1,
        },
        inner,
        violation,
    })
}

fn range_violation(arg: i64, hi: i64) -> Option<Violation> {
    if arg < 1 {
        Some(Violation::BelowRange)
    } else if arg > hi {
        Some(Violation::ForwardReference)
    } else {
        None
    }
}

/// Evaluates the system through index `cap`. At each `n`, `f(n)` is computed
/// first and then `g(n)`, which may read the fresh `f(n)`.
pub fn eval_system(
    sys: &GolombSystemSpec,
    ic_f: &[Rational64],
    ic_g: &[Rational64],
    cap: u64,
) -> Result<(SystemBuffer, EvalOutcome)> {
    sys.validate()?;
    // g(1) only needs f(1), so an empty g initial condition is allowed.
    if ic_f.is_empty() {
        return Err(Error::EmptyInitialCondition);
    }
    let cap = i64::try_from(cap).map_err(|_| Error::Overflow { index: cap })?;
    let reserve = (cap.max(0) as usize).max(ic_f.len()).max(ic_g.len());
    let mut f = Vec::with_capacity(reserve);
    let mut g = Vec::with_capacity(reserve);
    f.extend_from_slice(ic_f);
    g.extend_from_slice(ic_g);
    let status = run_system(sys, &mut f, &mut g, cap)?;
    let computed_len = f.len().min(g.len()) as u64;
    Ok((
        SystemBuffer {
            f,
            g,
            ic_len_f: ic_f.len(),
            ic_len_g: ic_g.len(),
        },
        EvalOutcome {
            computed_len,
            status,
        },
    ))
}

/// Integer-only convenience wrapper around [`eval_system`].
pub fn eval_system_int(
    sys: &GolombSystemSpec,
    ic_f: &[i64],
    ic_g: &[i64],
    cap: u64,
) -> Result<(SystemBuffer, EvalOutcome)> {
    let to_r = |v: &[i64]| {
        v.iter()
            .map(|&x| Rational64::from_integer(x))
            .collect::<Vec<_>>()
    };
    eval_system(sys, &to_r(ic_f), &to_r(ic_g), cap)
}

fn run_system(
    sys: &GolombSystemSpec,
    f: &mut Vec<Rational64>,
    g: &mut Vec<Rational64>,
    cap: i64,
) -> Result<Status> {
    let overflow = |n: i64| Error::Overflow { index: n as u64 };
    let start = f.len().min(g.len()) as i64 + 1;
    for n in start..=cap {
        if n > f.len() as i64 {
            // f(n) = g(n - g(n-1) - c_f) + d_f, referenced g index in [1, n-1]
            let Some(prev) = at(g, n - 1) else {
                return Ok(system_death(
                    n,
                    n - 1,
                    Component::F,
                    true,
                    Violation::BelowRange,
                ));
            };
            if !prev.is_integer() {
                return Ok(system_death(
                    n,
                    n - 1,
                    Component::F,
                    true,
                    Violation::NonIntegerIndex,
                ));
            }
            let j = n
                .checked_sub(prev.to_integer())
                .and_then(|x| x.checked_sub(sys.c_f))
                .ok_or_else(|| overflow(n))?;
            if let Some(v) = range_violation(j, n - 1) {
                return Ok(system_death(n, j, Component::F, false, v));
            }
            let value = plus_int(g[(j - 1) as usize], sys.d_f, n)?;
            f.push(value);
        }
        if n > g.len() as i64 {
            // g(n) = f(n - f(n) - c_g) + d_g, referenced f index in [1, n]
            let cur = f[(n - 1) as usize];
            if !cur.is_integer() {
                return Ok(system_death(
                    n,
                    n,
                    Component::G,
                    true,
                    Violation::NonIntegerIndex,
                ));
            }
            let j = n
                .checked_sub(cur.to_integer())
                .and_then(|x| x.checked_sub(sys.c_g))
                .ok_or_else(|| overflow(n))?;
            if let Some(v) = range_violation(j, n) {
                return Ok(system_death(n, j, Component::G, false, v));
            }
            let value = plus_int(f[(j - 1) as usize], sys.d_g, n)?;
            g.push(value);
        }
    }
    Ok(Status::Alive)
}
