//! Detection of interleaved constant/linear residue classes.

use std::fmt;

use serde::Serialize;

use crate::buffer::SequenceBuffer;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    /// The same value at every index of the class.
    Constant,
    /// Grows by exactly `modulus` per period, i.e. slope 1 in the index.
    Linear,
    Irregular,
}

impl ClassKind {
    pub fn letter(self) -> char {
        match self {
            ClassKind::Constant => 'C',
            ClassKind::Linear => 'L',
            ClassKind::Irregular => 'I',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueClass {
    /// Indices `n` with `n ≡ residue (mod modulus)`.
    pub residue: u64,
    pub kind: ClassKind,
    /// `a(n) mod modulus` when it is the same across the class.
    pub congruence: Option<u64>,
    /// `a(n) - n` for linear classes, the value for constant ones.
    pub offset: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterleavePattern {
    pub modulus: u64,
    /// First and last index examined, after alignment.
    pub from: i64,
    pub to: i64,
    /// Classes in the order `from, from+1, ...`; `from ≡ 0 (mod modulus)`.
    pub classes: Vec<ResidueClass>,
}

impl InterleavePattern {
    /// One letter per class, comma separated, e.g. `C,C,L,C,L`.
    pub fn pattern_string(&self) -> String {
        let letters: Vec<String> = self
            .classes
            .iter()
            .map(|c| c.kind.letter().to_string())
            .collect();
        letters.join(",")
    }

    /// The pattern without separators, e.g. `CCLCL`.
    pub fn compact(&self) -> String {
        self.classes.iter().map(|c| c.kind.letter()).collect()
    }

    /// Per-class residues of `a(n) mod modulus`, `None` where they vary.
    pub fn congruence_signature(&self) -> Vec<Option<u64>> {
        self.classes.iter().map(|c| c.congruence).collect()
    }

    pub fn is_periodic(&self) -> bool {
        self.classes.iter().all(|c| c.kind != ClassKind::Irregular)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pattern serializes")
    }
}

impl fmt::Display for InterleavePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pattern_string())
    }
}

/// Classifies each residue class of indices mod `modulus` over `[from, to]`.
///
/// The window is shrunk to start at an index `≡ 0` and end at an index `≡ -1`
/// so that every class has the same number of terms. Each class needs at
/// least three terms.
pub fn detect_interleaving(
    buf: &SequenceBuffer,
    modulus: u64,
    from: i64,
    to: i64,
) -> Result<InterleavePattern> {
    if modulus == 0 {
        return Err(Error::WindowTooShort("modulus must be positive".into()));
    }
    let md = modulus as i64;
    let from = from.max(buf.origin_index());
    let to = to.min(buf.last_index());
    let start = from + (-from).rem_euclid(md);
    let end = to - (to + 1).rem_euclid(md);
    let periods = if end >= start {
        (end - start + 1) / md
    } else {
        0
    };
    if periods < 3 {
        return Err(Error::WindowTooShort(format!(
            "[{from}, {to}] holds {periods} full periods of {modulus}, need 3"
        )));
    }
    let classes = (0..md)
        .map(|r| classify(buf, md, start + r, periods))
        .collect::<Result<Vec<_>>>()?;
    Ok(InterleavePattern {
        modulus,
        from: start,
        to: end,
        classes,
    })
}

fn classify(buf: &SequenceBuffer, md: i64, first: i64, periods: i64) -> Result<ResidueClass> {
    let values = (0..periods)
        .map(|j| buf.term(first + j * md))
        .collect::<Result<Vec<_>>>()?;
    let v0 = values[0];
    let kind = if values.iter().all(|&v| v == v0) {
        ClassKind::Constant
    } else if values.windows(2).all(|w| w[1] - w[0] == md) {
        ClassKind::Linear
    } else {
        ClassKind::Irregular
    };
    let c0 = v0.rem_euclid(md);
    let congruence = values
        .iter()
        .all(|v| v.rem_euclid(md) == c0)
        .then_some(c0 as u64);
    let offset = match kind {
        ClassKind::Constant => Some(v0),
        ClassKind::Linear => Some(v0 - first),
        ClassKind::Irregular => None,
    };
    Ok(ResidueClass {
        residue: first.rem_euclid(md) as u64,
        kind,
        congruence,
        offset,
    })
}
