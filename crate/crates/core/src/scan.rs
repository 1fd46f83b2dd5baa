//! Batch evaluation of many initial conditions for one recurrence.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{check_slow, eval_single};
use crate::interleave::detect_interleaving;
use crate::recurrence::RecurrenceSpec;

/// A finite set of initial conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IcSpace {
    Explicit(Vec<Vec<i64>>),
    /// Cartesian product of inclusive ranges, one per position.
    Ranges(Vec<(i64, i64)>),
}

impl IcSpace {
    /// Candidates in canonical order: sorted, duplicates removed.
    pub fn candidates(&self) -> Vec<Vec<i64>> {
        let mut out = match self {
            IcSpace::Explicit(list) => list.clone(),
            IcSpace::Ranges(ranges) => {
                if ranges.is_empty() || ranges.iter().any(|&(lo, hi)| lo > hi) {
                    return vec![];
                }
                let mut acc: Vec<Vec<i64>> = vec![vec![]];
                for &(lo, hi) in ranges {
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            (lo..=hi).map(move |v| {
                                let mut next = prefix.clone();
                                next.push(v);
                                next
                            })
                        })
                        .collect();
                }
                acc
            }
        };
        out.sort();
        out.dedup();
        out
    }

    /// Parses `"1..3,1,0..2"` (per-position ranges) or `"1,1,1,1;3,1,4,4"`
    /// (explicit list).
    pub fn parse(text: &str) -> Result<IcSpace> {
        let err = |m: String| Error::Parse {
            line: 1,
            message: m,
        };
        if text.contains("..") {
            let ranges = text
                .split(',')
                .map(|item| {
                    let item = item.trim();
                    let (lo, hi) = item.split_once("..").unwrap_or((item, item));
                    let lo = lo
                        .trim()
                        .parse::<i64>()
                        .map_err(|e| err(format!("'{item}': {e}")))?;
                    let hi = hi
                        .trim()
                        .parse::<i64>()
                        .map_err(|e| err(format!("'{item}': {e}")))?;
                    Ok((lo, hi))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(IcSpace::Ranges(ranges));
        }
        let list = text
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(crate::io::parse_ic)
            .collect::<Result<Vec<_>>>()?;
        Ok(IcSpace::Explicit(list))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Slow,
    Period5,
    Other,
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub ic: Vec<i64>,
    pub alive: bool,
    /// Defined terms, capped at the scan cap.
    pub lifespan: u64,
    pub death_index: Option<u64>,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub cap: u64,
    pub records: Vec<ScanRecord>,
    /// Dead candidates keyed by `floor(log10(lifespan))`.
    pub dead_by_decade: BTreeMap<u32, u64>,
    pub alive: u64,
    pub overflowed: u64,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Evaluates one candidate and classifies its behavior up to `cap`.
pub fn classify_candidate(spec: &RecurrenceSpec, ic: &[i64], cap: u64) -> ScanRecord {
    let (buf, outcome) = match eval_single(spec, ic, cap.max(ic.len() as u64)) {
        Ok(r) => r,
        Err(e) => {
            let classification = match e {
                Error::Overflow { .. } => Classification::Overflow,
                _ => Classification::Other,
            };
            return ScanRecord {
                ic: ic.to_vec(),
                alive: false,
                lifespan: 0,
                death_index: None,
                classification,
            };
        }
    };
    let mut classification = Classification::Other;
    if outcome.is_alive() {
        let last = buf.last_index();
        let first = ic.len() as i64 + 1;
        if first < last && check_slow(&buf, first, last).unwrap_or(false) {
            classification = Classification::Slow;
        } else if let Ok(p) = detect_interleaving(&buf, 5, last / 2, last) {
            if p.is_periodic() {
                classification = Classification::Period5;
            }
        }
    }
    ScanRecord {
        ic: ic.to_vec(),
        alive: outcome.is_alive(),
        lifespan: outcome.computed_len,
        death_index: outcome.death_index(),
        classification,
    }
}

/// Runs every candidate on a pool of `workers` threads. Records come back in
/// canonical candidate order whatever the worker count.
pub fn scan(
    spec: &RecurrenceSpec,
    space: &IcSpace,
    cap: u64,
    workers: usize,
) -> Result<ScanReport> {
    let candidates = space.candidates();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let records: Vec<ScanRecord> = pool.install(|| {
        candidates
            .par_iter()
            .map(|ic| classify_candidate(spec, ic, cap))
            .collect()
    });
    let mut dead_by_decade = BTreeMap::new();
    let mut alive = 0;
    let mut overflowed = 0;
    for r in &records {
        if r.classification == Classification::Overflow {
            overflowed += 1;
        } else if r.alive {
            alive += 1;
        } else {
            *dead_by_decade
                .entry(r.lifespan.max(1).ilog10())
                .or_insert(0) += 1;
        }
    }
    Ok(ScanReport {
        cap,
        records,
        dead_by_decade,
        alive,
        overflowed,
    })
}
