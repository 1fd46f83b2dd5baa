//! Exact evaluation of single-sequence nested recurrences, with death
//! detection.

use serde::Serialize;

use crate::buffer::{Cells, SequenceBuffer, Storage, ValueWidth};
use crate::error::{Error, Result};
use crate::recurrence::RecurrenceSpec;

/// How a referenced index fell outside the defined range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// The index was below the first term (`< 1`).
    BelowRange,
    /// The index pointed at the term being computed or later.
    ForwardReference,
    /// A non-integer term was used to build an index (systems only).
    NonIntegerIndex,
}

/// Diagnostics for a sequence that died.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Death {
    /// First index whose term is undefined.
    pub death_index: u64,
    /// The out-of-range index that was referenced.
    pub offending_argument: i64,
    /// Which summand failed, in spec order (0-based). For Golomb-like
    /// systems 0 is the f-recurrence and 1 the g-recurrence.
    pub offending_term_index: usize,
    /// True when the failing lookup was the inner `a(n - q)`.
    pub inner: bool,
    pub violation: Violation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Alive,
    Dead(Death),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EvalOutcome {
    /// Number of defined terms, initial condition included.
    pub computed_len: u64,
    #[serde(flatten)]
    pub status: Status,
}

impl EvalOutcome {
    pub fn is_alive(&self) -> bool {
        matches!(self.status, Status::Alive)
    }

    pub fn death(&self) -> Option<&Death> {
        match &self.status {
            Status::Alive => None,
            Status::Dead(d) => Some(d),
        }
    }

    pub fn death_index(&self) -> Option<u64> {
        self.death().map(|d| d.death_index)
    }
}

/// Evaluates `spec` from `ic` through index `cap` using 64-bit terms.
///
/// Death is reported in the outcome, not as an error. Errors are reserved for
/// invalid input and arithmetic overflow.
pub fn eval_single(
    spec: &RecurrenceSpec,
    ic: &[i64],
    cap: u64,
) -> Result<(SequenceBuffer, EvalOutcome)> {
    eval_single_with(spec, ic, cap, ValueWidth::Wide)
}

pub fn eval_single_with(
    spec: &RecurrenceSpec,
    ic: &[i64],
    cap: u64,
    width: ValueWidth,
) -> Result<(SequenceBuffer, EvalOutcome)> {
    if ic.is_empty() {
        return Err(Error::EmptyInitialCondition);
    }
    if (cap as usize) < ic.len() {
        return Err(Error::CapTooSmall {
            cap: cap as usize,
            ic_len: ic.len(),
        });
    }
    let shifts = spec
        .terms()
        .iter()
        .map(|t| {
            let p = i64::try_from(t.outer_shift);
            let q = i64::try_from(t.inner_shift);
            match (p, q) {
                (Ok(p), Ok(q)) => Ok((p, q)),
                _ => Err(Error::InvalidSpec("shift exceeds i64".into())),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let cap = i64::try_from(cap).map_err(|_| Error::Overflow { index: cap })?;

    let mut buf = SequenceBuffer::with_capacity(ic, width, cap as usize)?;
    let status = match &mut buf.storage {
        Storage::Wide(v) => run(v, &shifts, spec.constant(), cap)?,
        Storage::Compact(v) => run(v, &shifts, spec.constant(), cap)?,
    };
    buf.freeze();
    let outcome = EvalOutcome {
        computed_len: buf.len() as u64,
        status,
    };
    Ok((buf, outcome))
}

/// Like [`eval_single`] but keeps only the outcome.
pub fn lifespan(spec: &RecurrenceSpec, ic: &[i64], cap: u64) -> Result<EvalOutcome> {
    eval_single(spec, ic, cap).map(|(_, outcome)| outcome)
}

pub fn lifespan_with(
    spec: &RecurrenceSpec,
    ic: &[i64],
    cap: u64,
    width: ValueWidth,
) -> Result<EvalOutcome> {
    eval_single_with(spec, ic, cap, width).map(|(_, outcome)| outcome)
}

fn dead(n: i64, arg: i64, j: usize, inner: bool) -> Status {
    Status::Dead(Death {
        death_index: n as u64,
        offending_argument: arg,
        offending_term_index: j,
        inner,
        violation: if arg < 1 {
            Violation::BelowRange
        } else {
            Violation::ForwardReference
        },
    })
}

fn run<C: Cells>(cells: &mut C, shifts: &[(i64, i64)], constant: i64, cap: i64) -> Result<Status> {
    let overflow = |n: i64| Error::Overflow { index: n as u64 };
    let mut n = cells.count() as i64 + 1;
    while n <= cap {
        let mut sum = constant;
        for (j, &(p, q)) in shifts.iter().enumerate() {
            let inner = n - q;
            if inner < 1 {
                return Ok(dead(n, inner, j, true));
            }
            let x = cells.cell((inner - 1) as usize);
            let arg = n
                .checked_sub(p)
                .and_then(|v| v.checked_sub(x))
                .ok_or_else(|| overflow(n))?;
            if arg < 1 || arg >= n {
                return Ok(dead(n, arg, j, false));
            }
            sum = sum
                .checked_add(cells.cell((arg - 1) as usize))
                .ok_or_else(|| overflow(n))?;
        }
        cells.store(sum, n as u64)?;
        n += 1;
    }
    Ok(Status::Alive)
}

/// Back-reference indices `n - p_j - a(n - q_j)` for each summand, in spec
/// order. For two-term recurrences the first is the mother spot and the
/// second the father spot.
pub fn parent_spots(spec: &RecurrenceSpec, buf: &SequenceBuffer, n: i64) -> Result<Vec<i64>> {
    spec.terms()
        .iter()
        .map(|t| {
            let x = buf.term(n - t.inner_shift as i64)?;
            n.checked_sub(t.outer_shift as i64)
                .and_then(|v| v.checked_sub(x))
                .ok_or(Error::Overflow { index: n as u64 })
        })
        .collect()
}

/// True iff every successive difference on `[from, to]` is 0 or 1.
pub fn check_slow(buf: &SequenceBuffer, from: i64, to: i64) -> Result<bool> {
    if from > to {
        return Err(Error::OutOfRange {
            index: from,
            first: buf.origin_index(),
            last: to,
        });
    }
    buf.term(from)?;
    buf.term(to)?;
    if let Some(slice) = buf.as_slice() {
        let lo = (from - buf.origin_index()) as usize;
        let hi = (to - buf.origin_index()) as usize;
        return Ok(slice[lo..=hi]
            .windows(2)
            .all(|w| matches!(w[1] - w[0], 0 | 1)));
    }
    let mut prev = buf.term(from)?;
    for n in from + 1..=to {
        let cur = buf.term(n)?;
        if !matches!(cur - prev, 0 | 1) {
            return Ok(false);
        }
        prev = cur;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> RecurrenceSpec {
        RecurrenceSpec::v()
    }

    #[test]
    fn v_all_ones_prefix() {
        let (buf, out) = eval_single(&v(), &[1, 1, 1, 1], 10).unwrap();
        assert!(out.is_alive());
        assert_eq!(out.computed_len, 10);
        assert_eq!(buf.to_vec(), vec![1, 1, 1, 1, 2, 3, 4, 5, 5, 6]);
        assert!(buf.is_frozen());
    }

    #[test]
    fn printed_prefixes() {
        let (buf, _) = eval_single(&v(), &[4, 2, 5, 3, 1], 9).unwrap();
        assert_eq!(buf.to_vec(), vec![4, 2, 5, 3, 1, 4, 7, 5, 8]);
        let (buf, _) = eval_single(&RecurrenceSpec::h(), &[3, 1, 4, 2], 11).unwrap();
        assert_eq!(buf.to_vec(), vec![3, 1, 4, 2, 5, 3, 6, 9, 7, 5, 3]);
    }

    #[test]
    fn early_death() {
        let out = lifespan(&v(), &[4, 4, 4, 4], 100).unwrap();
        let d = out.death().unwrap();
        assert_eq!(out.computed_len, 5);
        assert_eq!(d.death_index, 6);
        assert_eq!(d.offending_argument, -2);
        assert_eq!(d.offending_term_index, 0);
        assert!(!d.inner);
        assert_eq!(d.violation, Violation::BelowRange);
    }

    #[test]
    fn forward_reference_is_death() {
        // a(2) = a(2 - a(1)) with a(1) = 0 points at itself.
        let out = lifespan(&RecurrenceSpec::golomb(), &[0], 5).unwrap();
        let d = out.death().unwrap();
        assert_eq!(d.death_index, 2);
        assert_eq!(d.offending_argument, 2);
        assert_eq!(d.violation, Violation::ForwardReference);
    }

    #[test]
    fn short_ic_inner_lookup() {
        let out = lifespan(&v(), &[1], 5).unwrap();
        let d = out.death().unwrap();
        assert_eq!(d.death_index, 2);
        assert!(d.inner);
        assert_eq!(d.offending_term_index, 1);
    }

    #[test]
    fn golomb_sequence() {
        // each value i occurs i times
        let (buf, _) = eval_single(&RecurrenceSpec::golomb(), &[1], 12).unwrap();
        assert_eq!(buf.to_vec(), vec![1, 2, 2, 3, 3, 3, 4, 4, 4, 4, 5, 5]);
    }

    #[test]
    fn input_errors() {
        assert_eq!(
            eval_single(&v(), &[], 5).unwrap_err(),
            Error::EmptyInitialCondition
        );
        assert!(matches!(
            eval_single(&v(), &[1, 1, 1, 1], 3),
            Err(Error::CapTooSmall { .. })
        ));
    }

    #[test]
    fn overflow_is_an_error() {
        let spec = RecurrenceSpec::new(vec![(0, 1).into()], i64::MAX).unwrap();
        let err = eval_single(&spec, &[1], 4).unwrap_err();
        assert_eq!(err, Error::Overflow { index: 2 });
    }

    #[test]
    fn compact_matches_wide() {
        let (wide, a) = eval_single(&v(), &[3, 4, 5, 4, 5, 6], 5000).unwrap();
        let (compact, b) =
            eval_single_with(&v(), &[3, 4, 5, 4, 5, 6], 5000, ValueWidth::Compact).unwrap();
        assert_eq!(a, b);
        assert_eq!(wide.to_vec(), compact.to_vec());
        assert_eq!(
            check_slow(&compact, 1, 10).unwrap(),
            check_slow(&wide, 1, 10).unwrap()
        );
    }

    #[test]
    fn compact_rejects_negative_ic() {
        assert!(matches!(
            eval_single_with(&v(), &[0, -1, 2, 3], 10, ValueWidth::Compact),
            Err(Error::CompactOverflow { .. })
        ));
    }

    #[test]
    fn parent_spot_examples() {
        let (buf, _) = eval_single(&v(), &[1, 1, 1, 1], 10).unwrap();
        assert_eq!(parent_spots(&v(), &buf, 5).unwrap(), vec![4, 4]);
        let (buf, _) = eval_single(&v(), &[4, 2, 5, 3, 1], 9).unwrap();
        // mother 6 - V(5) = 5, father 6 - V(2) = 4
        assert_eq!(parent_spots(&v(), &buf, 6).unwrap(), vec![5, 4]);
        assert!(parent_spots(&v(), &buf, 2).is_err());
    }

    #[test]
    fn slow_checks() {
        let (buf, _) = eval_single(&v(), &[1, 1, 1, 1], 1000).unwrap();
        assert!(check_slow(&buf, 1, 1000).unwrap());
        assert!(check_slow(&buf, 7, 7).unwrap());
        assert!(check_slow(&buf, 0, 5).is_err());
        assert!(check_slow(&buf, 5, 1001).is_err());
        let (buf, _) = eval_single(&v(), &[3, 1, 4, 4], 100).unwrap();
        assert!(!check_slow(&buf, 1, 100).unwrap());
    }
}
