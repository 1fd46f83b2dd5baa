//! Infinite quasi-periodic solution families of the V- and H-recurrences.
//!
//! A family is fixed by integers `(K, b0, b1, b2, b4, a_f, a_g, m)`. From
//! index `K` on the solution is a five-way interleaving: three residue
//! classes are constant or linear, and the other two are `5 f(k) + b` and
//! `5 g(k) + b` for the two sequences of a derived Golomb-like system.
//!
//! | class | V family        | H family        |
//! |-------|-----------------|-----------------|
//! | K+5k  | `5 f(k) + b0`   | `5k + b0`       |
//! | +1    | `5 g(k) + b1`   | `5k + b1`       |
//! | +2    | `5k + b2`       | `5 f(k) + b2`   |
//! | +3    | `5m`            | `5m`            |
//! | +4    | `5k + b4`       | `5 g(k) + b4`   |
//!
//! The f/g initial conditions are read off the prefix below `K` and occupy
//! system indices `1..=n0`, so class index `K + 5k` pairs with system index
//! `k + n0 + 1`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::buffer::SequenceBuffer;
use crate::error::{Error, Result};
use crate::eval::{eval_single, Death, EvalOutcome};
use crate::golomb::SlowSolutionOracle;
use crate::recurrence::RecurrenceSpec;
use crate::system::{eval_system, Component, GolombSystemSpec, SystemBuffer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    V,
    H,
}

impl Family {
    pub fn recurrence(self) -> RecurrenceSpec {
        match self {
            Family::V => RecurrenceSpec::v(),
            Family::H => RecurrenceSpec::h(),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "V" | "v" => Ok(Family::V),
            "H" | "h" => Ok(Family::H),
            _ => Err(Error::InvalidParams(format!(
                "unknown family recurrence '{s}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyParams {
    pub k: i64,
    pub b0: i64,
    pub b1: i64,
    pub b2: i64,
    pub b4: i64,
    pub a_f: i64,
    pub a_g: i64,
    pub m: i64,
}

/// A parameter constraint, printed in the form it is stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Constraint {
    Residue { name: &'static str, residue: i64 },
    Range { text: &'static str },
    SumPositive,
    MPositive,
    Derived { text: &'static str },
    GrowthPositive,
    NonEmptyInitialCondition,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Residue { name, residue } => write!(f, "{name}≡{residue} (mod 5)"),
            Constraint::Range { text } | Constraint::Derived { text } => f.write_str(text),
            Constraint::SumPositive => f.write_str("a_f+a_g>0"),
            Constraint::MPositive => f.write_str("m≥1"),
            Constraint::GrowthPositive => f.write_str("d_f+d_g>0"),
            Constraint::NonEmptyInitialCondition => f.write_str("n0≥1"),
        }
    }
}

fn residue(value: i64, name: &'static str, r: i64, out: &mut Vec<Constraint>) {
    if value.rem_euclid(5) != r {
        out.push(Constraint::Residue { name, residue: r });
    }
}

fn divisible(value: i64, text: &'static str, out: &mut Vec<Constraint>) {
    if value.rem_euclid(5) != 0 {
        out.push(Constraint::Derived { text });
    }
}

impl Family {
    /// Every violated constraint; empty means the parameters are valid.
    pub fn validate(self, p: &FamilyParams) -> Vec<Constraint> {
        let mut out = Vec::new();
        match self {
            Family::V => {
                residue(p.b0, "b0", 1, &mut out);
                residue(p.b1, "b1", 4, &mut out);
                residue(p.b2, "b2", 2, &mut out);
                if !(7 <= p.b2 && p.b2 < p.k + 3) {
                    out.push(Constraint::Range { text: "7≤b2<K+3" });
                }
                residue(p.b4, "b4", 3, &mut out);
                if !(8 <= p.b4 && p.b4 < p.k + 5) {
                    out.push(Constraint::Range { text: "8≤b4<K+5" });
                }
                residue(p.a_f, "a_f", 2, &mut out);
                residue(p.a_g, "a_g", 3, &mut out);
            }
            Family::H => {
                residue(p.b0, "b0", 1, &mut out);
                if !(6 <= p.b0 && p.b0 < p.k + 2) {
                    out.push(Constraint::Range { text: "6≤b0<K+2" });
                }
                residue(p.b1, "b1", 4, &mut out);
                if !(9 <= p.b1 && p.b1 < p.k + 3) {
                    out.push(Constraint::Range { text: "9≤b1<K+3" });
                }
                residue(p.b2, "b2", 2, &mut out);
                residue(p.b4, "b4", 3, &mut out);
                residue(p.a_f, "a_f", 4, &mut out);
                residue(p.a_g, "a_g", 1, &mut out);
            }
        }
        if p.a_f + p.a_g <= 0 {
            out.push(Constraint::SumPositive);
        }
        if p.m < 1 {
            out.push(Constraint::MPositive);
        }
        let (c_f, d_f, c_g, d_g) = self.system_numerators(p);
        match self {
            Family::V => {
                divisible(c_f, "(b1+1)/5∈ℤ", &mut out);
                divisible(c_g, "(b0-1)/5∈ℤ", &mut out);
                divisible(d_f, "(b1-b0+a_f)/5∈ℤ", &mut out);
                divisible(d_g, "(b0-b1+a_g)/5∈ℤ", &mut out);
            }
            Family::H => {
                divisible(c_f, "(b4+2)/5∈ℤ", &mut out);
                divisible(c_g, "(b2-2)/5∈ℤ", &mut out);
                divisible(d_f, "(b4-b2+a_f)/5∈ℤ", &mut out);
                divisible(d_g, "(b2-b4+a_g)/5∈ℤ", &mut out);
            }
        }
        if d_f + d_g <= 0 {
            out.push(Constraint::GrowthPositive);
        }
        if self.n0(p) < 1 {
            out.push(Constraint::NonEmptyInitialCondition);
        }
        out
    }

    /// Numerators of `(c_f, d_f, c_g, d_g)` before division by 5.
    fn system_numerators(self, p: &FamilyParams) -> (i64, i64, i64, i64) {
        match self {
            Family::V => (p.b1 + 1, p.b1 - p.b0 + p.a_f, p.b0 - 1, p.b0 - p.b1 + p.a_g),
            Family::H => (p.b4 + 2, p.b4 - p.b2 + p.a_f, p.b2 - 2, p.b2 - p.b4 + p.a_g),
        }
    }

    /// Number of f (and g) initial-condition terms.
    pub fn n0(self, p: &FamilyParams) -> i64 {
        match self {
            Family::V => (p.k - 1).div_euclid(5),
            Family::H => (p.k + 1).div_euclid(5),
        }
    }

    pub fn derived_system(self, p: &FamilyParams) -> Result<GolombSystemSpec> {
        let violations = self.validate(p);
        if !violations.is_empty() {
            return Err(invalid(&violations));
        }
        let (c_f, d_f, c_g, d_g) = self.system_numerators(p);
        GolombSystemSpec::new(c_f / 5, d_f / 5, c_g / 5, d_g / 5)
    }

    /// Index in the sequence of the first f and first g initial-condition
    /// term; later terms follow every 5 indices.
    fn ic_starts(self, p: &FamilyParams) -> (i64, i64) {
        let base = p.k - 5 * self.n0(p);
        match self {
            Family::V => (base, base + 1),
            Family::H => (base + 2, base + 4),
        }
    }

    /// Offsets subtracted from the sequence terms before dividing by 5.
    fn ic_offsets(self, p: &FamilyParams) -> (i64, i64) {
        match self {
            Family::V => (p.b0, p.b1),
            Family::H => (p.b2, p.b4),
        }
    }
}

fn invalid(violations: &[Constraint]) -> Error {
    let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
    Error::InvalidParams(list.join(", "))
}

pub fn validate_params_v(p: &FamilyParams) -> Vec<Constraint> {
    Family::V.validate(p)
}

pub fn validate_params_h(p: &FamilyParams) -> Vec<Constraint> {
    Family::H.validate(p)
}

pub fn derived_system_v(p: &FamilyParams) -> Result<GolombSystemSpec> {
    Family::V.derived_system(p)
}

pub fn derived_system_h(p: &FamilyParams) -> Result<GolombSystemSpec> {
    Family::H.derived_system(p)
}

/// The first initial-condition restriction that failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionFailure {
    /// 1 through 7.
    pub restriction: u8,
    pub detail: String,
}

impl fmt::Display for RestrictionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "restriction {}: {}", self.restriction, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestrictionCheck {
    /// The first `K - 1` terms the restrictions were read from.
    pub prefix: Vec<i64>,
    #[serde(serialize_with = "ser_rationals")]
    pub f_ic: Vec<Rational64>,
    #[serde(serialize_with = "ser_rationals")]
    pub g_ic: Vec<Rational64>,
    /// System indices through which the sublinearity bounds were checked.
    pub verified_through: u64,
    pub failure: Option<RestrictionFailure>,
}

fn ser_rationals<S: serde::Serializer>(
    v: &[Rational64],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

impl RestrictionCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Reads `a(index)` from a prefix of length `K - 1`.
fn prefix_term(
    prefix: &[i64],
    index: i64,
    restriction: u8,
) -> std::result::Result<i64, RestrictionFailure> {
    if index < 1 || index > prefix.len() as i64 {
        return Err(RestrictionFailure {
            restriction,
            detail: format!(
                "index {index} outside the initial condition 1..={}",
                prefix.len()
            ),
        });
    }
    Ok(prefix[(index - 1) as usize])
}

fn expect_eq(
    prefix: &[i64],
    index: i64,
    expected: i64,
    restriction: u8,
    label: &str,
) -> std::result::Result<(), RestrictionFailure> {
    let got = prefix_term(prefix, index, restriction)?;
    if got != expected {
        return Err(RestrictionFailure {
            restriction,
            detail: format!("{label}: a({index}) = {got}, expected {expected}"),
        });
    }
    Ok(())
}

/// Extends `ic` with the recurrence (or truncates it) to exactly `K - 1`
/// terms.
fn prefix_of(family: Family, p: &FamilyParams, ic: &[i64]) -> Result<Vec<i64>> {
    let want = (p.k - 1).max(0) as usize;
    if ic.len() >= want {
        return Ok(ic[..want].to_vec());
    }
    let (buf, outcome) = eval_single(&family.recurrence(), ic, want as u64)?;
    if let Some(d) = outcome.death() {
        return Err(Error::Dead {
            death_index: d.death_index,
        });
    }
    Ok(buf.to_vec())
}

fn restrictions_1_to_6(
    family: Family,
    p: &FamilyParams,
    a: &[i64],
) -> std::result::Result<(), RestrictionFailure> {
    let five_m = 5 * p.m;
    match family {
        Family::V => {
            expect_eq(a, p.k + 5 - p.b4, p.a_f, 1, "V_G(K+5-b4)=a_f")?;
            expect_eq(a, p.k + 6 - p.b2, p.a_g, 2, "V_G(K+6-b2)=a_g")?;
            let x = prefix_term(a, p.k + 3 - p.b2, 3)?;
            let y = prefix_term(a, p.k + 8 - p.b4, 3)?;
            if x + y != five_m {
                return Err(RestrictionFailure {
                    restriction: 3,
                    detail: format!("V_G(K+3-b2)+V_G(K+8-b4)=5m: {x} + {y} != {five_m}"),
                });
            }
            for i in 1..=p.m {
                expect_eq(
                    a,
                    p.k + 2 - 5 * i,
                    p.b2 - 5 * i,
                    4,
                    &format!("V_G(K+2-5i)=b2-5i, i={i}"),
                )?;
            }
            expect_eq(a, p.k - 2, five_m, 5, "V_G(K-2)=5m")?;
            for i in 1..=p.m {
                expect_eq(
                    a,
                    p.k + 4 - 5 * i,
                    p.b4 - 5 * i,
                    6,
                    &format!("V_G(K+4-5i)=b4-5i, i={i}"),
                )?;
            }
        }
        Family::H => {
            expect_eq(a, p.k + 2 - p.b0, p.a_f, 1, "H_G(K+2-b0)=a_f")?;
            expect_eq(a, p.k + 4 - p.b1, p.a_g, 2, "H_G(K+4-b1)=a_g")?;
            let x = prefix_term(a, p.k + 3 - p.b0, 3)?;
            let y = prefix_term(a, p.k + 3 - p.b1, 3)?;
            if x + y != five_m {
                return Err(RestrictionFailure {
                    restriction: 3,
                    detail: format!("H_G(K+3-b0)+H_G(K+3-b1)=5m: {x} + {y} != {five_m}"),
                });
            }
            for i in 1..=p.m {
                expect_eq(
                    a,
                    p.k - 5 * i,
                    p.b0 - 5 * i,
                    4,
                    &format!("H_G(K-5i)=b0-5i, i={i}"),
                )?;
            }
            for i in 1..=p.m {
                expect_eq(
                    a,
                    p.k + 1 - 5 * i,
                    p.b1 - 5 * i,
                    5,
                    &format!("H_G(K+1-5i)=b1-5i, i={i}"),
                )?;
            }
            expect_eq(a, p.k - 2, five_m, 6, "H_G(K-2)=5m")?;
        }
    }
    Ok(())
}

/// f and g initial conditions read off the prefix as exact rationals.
pub fn extract_system_ic(
    family: Family,
    p: &FamilyParams,
    prefix: &[i64],
) -> std::result::Result<(Vec<Rational64>, Vec<Rational64>), RestrictionFailure> {
    let n0 = family.n0(p);
    let (f_start, g_start) = family.ic_starts(p);
    let (f_off, g_off) = family.ic_offsets(p);
    let read = |start: i64, off: i64| {
        (0..n0)
            .map(|j| prefix_term(prefix, start + 5 * j, 7).map(|v| Rational64::new(v - off, 5)))
            .collect::<std::result::Result<Vec<_>, _>>()
    };
    Ok((read(f_start, f_off)?, read(g_start, g_off)?))
}

/// Sublinearity bounds on the derived system for `n0 < n <= horizon`.
fn sublinear_failure(
    family: Family,
    p: &FamilyParams,
    sys: &SystemBuffer,
    horizon: i64,
) -> Option<String> {
    let n0 = family.n0(p);
    let f = |n: i64| sys.f(n).expect("evaluated");
    let g = |n: i64| sys.g(n).expect("evaluated");
    let int = Rational64::from_integer;
    for n in n0 + 1..=horizon {
        let checks: [(Rational64, i64, &str); 3] = match family {
            Family::V => [
                (f(n), n + (p.b0 - 1) / 5, "f(n) ≤ n+(b0-1)/5"),
                (g(n - 1), n + (p.b1 + 1) / 5, "g(n-1) ≤ n+(b1+1)/5"),
                (g(n), n + (p.b1 + 1) / 5, "g(n) ≤ n+(b1+1)/5"),
            ],
            Family::H => [
                (f(n - 1), n + (p.b2 + 3) / 5, "f(n-1) ≤ n+(b2+3)/5"),
                (f(n), n + (p.b2 - 2) / 5, "f(n) ≤ n+(b2-2)/5"),
                (g(n - 1), n + (p.b4 + 2) / 5, "g(n-1) ≤ n+(b4+2)/5"),
            ],
        };
        for (value, bound, label) in checks {
            if value > int(bound) {
                return Some(format!("{label} fails at n={n}: {value} > {bound}"));
            }
        }
    }
    None
}

impl Family {
    /// Checks restrictions 1-6 exactly and restriction 7 by running the
    /// derived system to `horizon` (an empirical check of a statement about
    /// all n).
    pub fn check_ic_restrictions(
        self,
        p: &FamilyParams,
        ic: &[i64],
        horizon: u64,
    ) -> Result<RestrictionCheck> {
        let sys = self.derived_system(p)?;
        let prefix = prefix_of(self, p, ic)?;
        let mut check = RestrictionCheck {
            prefix,
            f_ic: vec![],
            g_ic: vec![],
            verified_through: 0,
            failure: None,
        };
        if let Err(f) = restrictions_1_to_6(self, p, &check.prefix) {
            check.failure = Some(f);
            return Ok(check);
        }
        match extract_system_ic(self, p, &check.prefix) {
            Ok((f_ic, g_ic)) => {
                check.f_ic = f_ic;
                check.g_ic = g_ic;
            }
            Err(f) => {
                check.failure = Some(f);
                return Ok(check);
            }
        }
        let horizon = horizon.max(self.n0(p) as u64 + 1);
        let (buf, outcome) = eval_system(&sys, &check.f_ic, &check.g_ic, horizon)?;
        if let Some(d) = outcome.death() {
            check.failure = Some(RestrictionFailure {
                restriction: 7,
                detail: format!(
                    "derived system dies at index {} ({:?})",
                    d.death_index, d.violation
                ),
            });
            return Ok(check);
        }
        if let Some(detail) = sublinear_failure(self, p, &buf, horizon as i64) {
            check.failure = Some(RestrictionFailure {
                restriction: 7,
                detail,
            });
            return Ok(check);
        }
        check.verified_through = horizon;
        Ok(check)
    }

    /// Value of the family at `index`, given the derived system's terms.
    /// `None` when the index needs an f/g term that is not available.
    pub fn family_term(
        self,
        p: &FamilyParams,
        sys: &SystemBuffer,
        index: i64,
    ) -> Result<Option<i64>> {
        let d = index - p.k;
        let (k, r) = (d.div_euclid(5), d.rem_euclid(5));
        let j = k + self.n0(p) + 1;
        let fg = |which: Component| -> Result<Option<i64>> {
            match sys.get(which, j) {
                None => Ok(None),
                Some(v) if v.is_integer() => Ok(Some(v.to_integer())),
                Some(_) => Err(Error::NonInteger { index: j as u64 }),
            }
        };
        let value = match (self, r) {
            (Family::V, 0) => fg(Component::F)?.map(|f| 5 * f + p.b0),
            (Family::V, 1) => fg(Component::G)?.map(|g| 5 * g + p.b1),
            (Family::V, 2) => Some(5 * k + p.b2),
            (Family::V, 4) => Some(5 * k + p.b4),
            (Family::H, 0) => Some(5 * k + p.b0),
            (Family::H, 1) => Some(5 * k + p.b1),
            (Family::H, 2) => fg(Component::F)?.map(|f| 5 * f + p.b2),
            (Family::H, 4) => fg(Component::G)?.map(|g| 5 * g + p.b4),
            (_, 3) => Some(5 * p.m),
            _ => unreachable!("residue in 0..5"),
        };
        Ok(value)
    }

    /// The interleaving at indices `K ..= K + 5 k_max + 4`, as a frozen
    /// buffer with origin `K`.
    pub fn construct_family(
        self,
        p: &FamilyParams,
        sys: &SystemBuffer,
        k_max: u64,
    ) -> Result<SequenceBuffer> {
        let end = p.k + 5 * k_max as i64 + 4;
        let mut terms = Vec::with_capacity((end - p.k + 1) as usize);
        for idx in p.k..=end {
            let v = self
                .family_term(p, sys, idx)?
                .ok_or_else(|| Error::BufferExhausted(format!("f/g needed for index {idx}")))?;
            terms.push(v);
        }
        Ok(SequenceBuffer::from_terms(p.k, terms))
    }
}

pub fn check_ic_restrictions_v(
    p: &FamilyParams,
    ic: &[i64],
    horizon: u64,
) -> Result<RestrictionCheck> {
    Family::V.check_ic_restrictions(p, ic, horizon)
}

pub fn check_ic_restrictions_h(
    p: &FamilyParams,
    ic: &[i64],
    horizon: u64,
) -> Result<RestrictionCheck> {
    Family::H.check_ic_restrictions(p, ic, horizon)
}

pub fn construct_family_v(
    p: &FamilyParams,
    sys: &SystemBuffer,
    k_max: u64,
) -> Result<SequenceBuffer> {
    Family::V.construct_family(p, sys, k_max)
}

pub fn construct_family_h(
    p: &FamilyParams,
    sys: &SystemBuffer,
    k_max: u64,
) -> Result<SequenceBuffer> {
    Family::H.construct_family(p, sys, k_max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyMismatch {
    pub index: i64,
    pub expected: Option<i64>,
    pub actual: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyVerification {
    pub family: Family,
    pub checked_from: i64,
    pub checked_to: i64,
    pub direct: EvalOutcome,
    pub first_mismatch: Option<FamilyMismatch>,
}

impl FamilyVerification {
    pub fn passed(&self) -> bool {
        self.direct.is_alive() && self.first_mismatch.is_none()
    }

    pub fn death(&self) -> Option<&Death> {
        self.direct.death()
    }
}

/// Evaluates the recurrence directly from `ic` through `K + 5 periods` and
/// compares every index from `from` (default `K`) with the family form.
pub fn verify_family_end_to_end(
    family: Family,
    ic: &[i64],
    p: &FamilyParams,
    periods: u64,
    from: Option<i64>,
) -> Result<FamilyVerification> {
    let sys_spec = family.derived_system(p)?;
    let to = p.k + 5 * periods as i64;
    let from = from.unwrap_or(p.k);
    let (buf, direct) = eval_single(&family.recurrence(), ic, to.max(ic.len() as i64) as u64)?;
    let mut result = FamilyVerification {
        family,
        checked_from: from,
        checked_to: to,
        direct,
        first_mismatch: None,
    };
    if !direct.is_alive() || buf.len() < (p.k - 1) as usize {
        return Ok(result);
    }
    let prefix = buf.to_vec()[..(p.k - 1) as usize].to_vec();
    let (f_ic, g_ic) =
        extract_system_ic(family, p, &prefix).map_err(|f| Error::InvalidParams(f.to_string()))?;
    let sys_cap = periods + family.n0(p) as u64 + 2;
    let (sys, _) = eval_system(&sys_spec, &f_ic, &g_ic, sys_cap)?;
    for idx in from..=to {
        let actual = buf.get(idx).expect("alive through `to`");
        let expected = match family.family_term(p, &sys, idx) {
            Ok(v) => v,
            Err(Error::NonInteger { .. }) => None,
            Err(e) => return Err(e),
        };
        if expected != Some(actual) {
            result.first_mismatch = Some(FamilyMismatch {
                index: idx,
                expected,
                actual,
            });
            break;
        }
    }
    Ok(result)
}

/// A worked example: an initial condition with its family parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyFixture {
    pub name: &'static str,
    pub family: Family,
    pub ic: Vec<i64>,
    pub params: FamilyParams,
    /// Prefix of the solution as printed alongside the example.
    pub printed_prefix: Vec<i64>,
    /// First index of the re-indexed form, where the interleaving starts
    /// holding (earlier than `K`).
    pub start_index: i64,
    /// The slow Golomb-like solution the f/g sequences coincide with.
    pub oracle: SlowSolutionOracle,
}

impl FamilyFixture {
    pub fn all() -> Vec<FamilyFixture> {
        vec![Self::v1(), Self::v2(), Self::h1(), Self::h2()]
    }

    pub fn by_name(name: &str) -> Option<FamilyFixture> {
        Self::all()
            .into_iter()
            .find(|f| f.name.eq_ignore_ascii_case(name))
    }

    pub fn v1() -> Self {
        FamilyFixture {
            name: "v1",
            family: Family::V,
            ic: vec![4, 2, 5, 3, 1],
            params: FamilyParams {
                k: 10,
                b0: 1,
                b1: -1,
                b2: 12,
                b4: 13,
                a_f: 2,
                a_g: 3,
                m: 1,
            },
            printed_prefix: vec![4, 2, 5, 3, 1, 4, 7, 5, 8],
            start_index: 5,
            oracle: SlowSolutionOracle::Fg1,
        }
    }

    pub fn v2() -> Self {
        FamilyFixture {
            name: "v2",
            family: Family::V,
            ic: vec![3, 1, 4, 2, 5, 3],
            params: FamilyParams {
                k: 22,
                b0: 1,
                b1: -1,
                b2: 17,
                b4: 23,
                a_f: 2,
                a_g: 8,
                m: 2,
            },
            printed_prefix: vec![
                3, 1, 4, 2, 5, 3, 6, 4, 7, 10, 8, 6, 9, 7, 10, 13, 6, 14, 12, 10, 18, 6,
            ],
            start_index: 10,
            oracle: SlowSolutionOracle::Fg2,
        }
    }

    pub fn h1() -> Self {
        FamilyFixture {
            name: "h1",
            family: Family::H,
            ic: vec![3, 1, 4, 2],
            params: FamilyParams {
                k: 12,
                b0: 11,
                b1: 14,
                b2: 2,
                b4: -2,
                a_f: 4,
                a_g: 1,
                m: 1,
            },
            printed_prefix: vec![3, 1, 4, 2, 5, 3, 6, 9, 7, 5, 3],
            start_index: 5,
            oracle: SlowSolutionOracle::Fg1,
        }
    }

    pub fn h2() -> Self {
        FamilyFixture {
            name: "h2",
            family: Family::H,
            ic: vec![4, 2, 5, 3, 1, 4, 7, 5],
            params: FamilyParams {
                k: 25,
                b0: 16,
                b1: 19,
                b2: 2,
                b4: -2,
                a_f: 9,
                a_g: 6,
                m: 2,
            },
            printed_prefix: vec![
                4, 2, 5, 3, 1, 4, 7, 5, 3, 6, 9, 7, 10, 8, 6, 9, 12, 10, 13, 11, 14, 12, 10, 13,
            ],
            start_index: 15,
            oracle: SlowSolutionOracle::Fg12,
        }
    }

    pub fn verify(&self, periods: u64) -> Result<FamilyVerification> {
        verify_family_end_to_end(
            self.family,
            &self.ic,
            &self.params,
            periods,
            Some(self.start_index),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_params_validate() {
        for fx in FamilyFixture::all() {
            assert!(fx.family.validate(&fx.params).is_empty(), "{}", fx.name);
        }
    }

    #[test]
    fn b2_residue_violation() {
        let mut p = FamilyFixture::v1().params;
        p.b2 = 11;
        let v = validate_params_v(&p);
        assert!(v.iter().any(|c| c.to_string() == "b2≡2 (mod 5)"), "{v:?}");
    }

    #[test]
    fn h1_b4_violation() {
        let mut p = FamilyFixture::h1().params;
        p.b4 = -3;
        let v = validate_params_h(&p);
        assert!(v.iter().any(|c| c.to_string() == "b4≡3 (mod 5)"), "{v:?}");
    }

    #[test]
    fn derived_systems() {
        let sys = |fx: FamilyFixture| fx.family.derived_system(&fx.params).unwrap();
        assert_eq!(sys(FamilyFixture::v1()), SlowSolutionOracle::Fg1.system());
        assert_eq!(sys(FamilyFixture::v2()), SlowSolutionOracle::Fg2.system());
        assert_eq!(sys(FamilyFixture::h1()), SlowSolutionOracle::Fg1.system());
        assert_eq!(sys(FamilyFixture::h2()), SlowSolutionOracle::Fg12.system());
    }

    #[test]
    fn degenerate_zero_d_f_is_allowed() {
        // b1 - b0 + a_f = 0 gives d_f = 0; fine while d_g > 0.
        let p = FamilyParams {
            k: 10,
            b0: 6,
            b1: 4,
            b2: 12,
            b4: 13,
            a_f: 2,
            a_g: 3,
            m: 1,
        };
        let sys = derived_system_v(&p).unwrap();
        assert_eq!(sys.d_f, 0);
        assert!(sys.d_g > 0);
    }

    #[test]
    fn extracted_initial_conditions() {
        let ints = |v: &[Rational64]| v.iter().map(|r| r.to_integer()).collect::<Vec<_>>();
        let cases = [
            (FamilyFixture::v1(), vec![0], vec![1]),
            (FamilyFixture::v2(), vec![0, 1, 1, 1], vec![1, 1, 2, 3]),
            (FamilyFixture::h1(), vec![0, 1], vec![1, 1]),
            (
                FamilyFixture::h2(),
                vec![0, 1, 1, 2, 2],
                vec![1, 1, 2, 3, 3],
            ),
        ];
        for (fx, f, g) in cases {
            let check = fx
                .family
                .check_ic_restrictions(&fx.params, &fx.ic, 1000)
                .unwrap();
            assert!(check.passed(), "{}: {:?}", fx.name, check.failure);
            assert_eq!(ints(&check.f_ic), f, "{}", fx.name);
            assert_eq!(ints(&check.g_ic), g, "{}", fx.name);
            assert_eq!(check.prefix.len() as i64, fx.params.k - 1);
        }
    }

    #[test]
    fn altered_prefix_fails_restriction_5() {
        let fx = FamilyFixture::v1();
        let mut prefix = fx.printed_prefix.clone();
        prefix[7] = 6; // V_G(8)
        let check = check_ic_restrictions_v(&fx.params, &prefix, 100).unwrap();
        let failure = check.failure.unwrap();
        assert_eq!(failure.restriction, 5);
    }

    #[test]
    fn out_of_range_restriction_index() {
        // b4 = K + 5 + ... pushes K+5-b4 below 1 while keeping residues; the
        // range check flags it, and the restriction check refuses to run.
        let mut p = FamilyFixture::v1().params;
        p.b4 = 18;
        assert!(!validate_params_v(&p).is_empty());
        assert!(check_ic_restrictions_v(&p, &[4, 2, 5, 3, 1], 10).is_err());
    }

    #[test]
    fn reindexed_forms() {
        let fx = FamilyFixture::v1();
        let (buf, _) = eval_single(&RecurrenceSpec::v(), &fx.ic, 5000).unwrap();
        for k in 1..900 {
            assert_eq!(buf.get(5 * k + 3), Some(5));
            assert_eq!(buf.get(5 * k + 2), Some(5 * k + 2));
        }
        let fx = FamilyFixture::v2();
        let (buf, _) = eval_single(&RecurrenceSpec::v(), &fx.ic, 5000).unwrap();
        for k in 2..900 {
            assert_eq!(buf.get(5 * k), Some(10));
        }
    }

    #[test]
    fn construct_matches_direct() {
        let fx = FamilyFixture::v1();
        let check = fx
            .family
            .check_ic_restrictions(&fx.params, &fx.ic, 200)
            .unwrap();
        let sys_spec = fx.family.derived_system(&fx.params).unwrap();
        let (sys, _) = eval_system(&sys_spec, &check.f_ic, &check.g_ic, 200).unwrap();
        let tail = construct_family_v(&fx.params, &sys, 100).unwrap();
        assert_eq!(tail.origin_index(), 10);
        let (direct, _) = eval_single(&RecurrenceSpec::v(), &fx.ic, 600).unwrap();
        for (n, v) in tail.iter() {
            assert_eq!(direct.get(n), Some(v), "index {n}");
        }
        // V_G(10) = 5 f(2) + 1 with f(2) = 1
        assert_eq!(tail.get(10), Some(6));
    }

    #[test]
    fn perturbed_ic_does_not_verify() {
        let fx = FamilyFixture::v1();
        let res =
            verify_family_end_to_end(Family::V, &[4, 2, 5, 3, 2], &fx.params, 2000, None).unwrap();
        assert!(!res.passed());
    }

    #[test]
    fn fixtures_verify_small() {
        for fx in FamilyFixture::all() {
            let res = fx.verify(2000).unwrap();
            assert!(res.passed(), "{}: {:?}", fx.name, res.first_mismatch);
        }
    }
}
