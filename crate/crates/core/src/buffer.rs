//! Exact integer term storage for a single sequence.

use crate::error::{Error, Result};

/// Per-term storage width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValueWidth {
    /// Signed 64-bit terms.
    #[default]
    Wide,
    /// Unsigned 32-bit terms, for runs past ~10^9 terms. Every store is a
    /// checked narrowing; negative or oversized values are rejected.
    Compact,
}

/// Backing vector for one width. The evaluator is generic over this so the
/// hot loop is monomorphized per width.
pub(crate) trait Cells: Send + Sync {
    fn cell(&self, zero_based: usize) -> i64;
    fn store(&mut self, value: i64, index: u64) -> Result<()>;
    fn count(&self) -> usize;
}

impl Cells for Vec<i64> {
    #[inline(always)]
    fn cell(&self, i: usize) -> i64 {
        self[i]
    }

    #[inline(always)]
    fn store(&mut self, value: i64, _index: u64) -> Result<()> {
        self.push(value);
        Ok(())
    }

    fn count(&self) -> usize {
        self.len()
    }
}

impl Cells for Vec<u32> {
    #[inline(always)]
    fn cell(&self, i: usize) -> i64 {
        i64::from(self[i])
    }

    #[inline(always)]
    fn store(&mut self, value: i64, index: u64) -> Result<()> {
        let narrow = u32::try_from(value).map_err(|_| Error::CompactOverflow { index, value })?;
        self.push(narrow);
        Ok(())
    }

    fn count(&self) -> usize {
        self.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Storage {
    Wide(Vec<i64>),
    Compact(Vec<u32>),
}

/// A growable store of consecutive terms `a(origin)`, `a(origin + 1)`, ...
///
/// The first `ic_len` terms are the initial condition. Buffers returned by
/// the evaluators are frozen; a frozen buffer never changes and can be shared
/// freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceBuffer {
    pub(crate) storage: Storage,
    ic_len: usize,
    origin: i64,
    frozen: bool,
}

impl SequenceBuffer {
    /// A live buffer seeded with `ic`, indexed from 1.
    pub fn new(ic: &[i64], width: ValueWidth) -> Result<Self> {
        Self::with_capacity(ic, width, ic.len())
    }

    pub fn with_capacity(ic: &[i64], width: ValueWidth, capacity: usize) -> Result<Self> {
        if ic.is_empty() {
            return Err(Error::EmptyInitialCondition);
        }
        let capacity = capacity.max(ic.len());
        let storage = match width {
            ValueWidth::Wide => {
                let mut v = Vec::with_capacity(capacity);
                v.extend_from_slice(ic);
                Storage::Wide(v)
            }
            ValueWidth::Compact => {
                let mut v: Vec<u32> = Vec::with_capacity(capacity);
                for (i, &x) in ic.iter().enumerate() {
                    v.store(x, i as u64 + 1)?;
                }
                Storage::Compact(v)
            }
        };
        Ok(SequenceBuffer {
            storage,
            ic_len: ic.len(),
            origin: 1,
            frozen: false,
        })
    }

    /// A frozen buffer holding `terms` starting at `origin`, e.g. from a
    /// parsed b-file. The whole content counts as initial condition.
    pub fn from_terms(origin: i64, terms: Vec<i64>) -> Self {
        SequenceBuffer {
            ic_len: terms.len(),
            storage: Storage::Wide(terms),
            origin,
            frozen: true,
        }
    }

    pub fn width(&self) -> ValueWidth {
        match self.storage {
            Storage::Wide(_) => ValueWidth::Wide,
            Storage::Compact(_) => ValueWidth::Compact,
        }
    }

    pub fn len(&self) -> usize {
        match &self.storage {
            Storage::Wide(v) => v.len(),
            Storage::Compact(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ic_len(&self) -> usize {
        self.ic_len
    }

    pub fn origin_index(&self) -> i64 {
        self.origin
    }

    /// Index of the last stored term.
    pub fn last_index(&self) -> i64 {
        self.origin + self.len() as i64 - 1
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    pub fn freeze(&mut self) {
        self.frozen = true;
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.origin && n <= self.last_index()
    }

    /// `a(n)` if stored.
    #[inline]
    pub fn get(&self, n: i64) -> Option<i64> {
        if !self.contains(n) {
            return None;
        }
        let i = (n - self.origin) as usize;
        Some(match &self.storage {
            Storage::Wide(v) => v[i],
            Storage::Compact(v) => i64::from(v[i]),
        })
    }

    /// `a(n)`, or an out-of-range error.
    pub fn term(&self, n: i64) -> Result<i64> {
        self.get(n).ok_or(Error::OutOfRange {
            index: n,
            first: self.origin,
            last: self.last_index(),
        })
    }

    pub fn push(&mut self, value: i64) -> Result<()> {
        if self.frozen {
            return Err(Error::Frozen);
        }
        let index = (self.last_index() + 1) as u64;
        match &mut self.storage {
            Storage::Wide(v) => v.store(value, index),
            Storage::Compact(v) => v.store(value, index),
        }
    }

    /// `(n, a(n))` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.origin..=self.last_index()).map(move |n| (n, self.get(n).expect("in range")))
    }

    pub fn to_vec(&self) -> Vec<i64> {
        match &self.storage {
            Storage::Wide(v) => v.clone(),
            Storage::Compact(v) => v.iter().map(|&x| i64::from(x)).collect(),
        }
    }

    /// Borrow of the wide storage, when that is the active width.
    pub fn as_slice(&self) -> Option<&[i64]> {
        match &self.storage {
            Storage::Wide(v) => Some(v),
            Storage::Compact(_) => None,
        }
    }
}
