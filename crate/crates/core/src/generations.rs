//! Generational structure of a V-recurrence solution: the W, P_s, P and R
//! boundary sequences, the noise `S_c(n) = a(n) - n/2`, per-generation noise
//! moments and the growth exponents alpha(k).
//!
//! Everything here assumes the V shape (mother spot `m - a(m-1)`, father spot
//! `m - a(m-4)`).

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::buffer::SequenceBuffer;
use crate::error::{Error, Result};
use crate::eval::eval_single;
use crate::recurrence::RecurrenceSpec;

const MOTHER_SHIFT: i64 = 1;
const FATHER_SHIFT: i64 = 4;

/// `min(m - a(m-4), m - a(m-1))`, defined for indices computed by the
/// recurrence.
pub fn min_parent_spot(buf: &SequenceBuffer, m: i64) -> Result<i64> {
    let first = first_recurrence_index(buf);
    if m < first {
        return Err(Error::OutOfRange {
            index: m,
            first,
            last: buf.last_index(),
        });
    }
    let mother = m - buf.term(m - MOTHER_SHIFT)?;
    let father = m - buf.term(m - FATHER_SHIFT)?;
    Ok(mother.min(father))
}

fn first_recurrence_index(buf: &SequenceBuffer) -> i64 {
    buf.origin_index() + buf.ic_len() as i64
}

/// Least `m` whose smaller parent spot is at least `n`.
#[allow(non_snake_case)]
pub fn W(buf: &SequenceBuffer, n: i64) -> Result<i64> {
    WScan::new(buf).next_at_least(n)
}

/// Forward-only scanner for W over non-decreasing targets; the answer for a
/// larger target can never lie before the answer for a smaller one.
struct WScan<'a> {
    buf: &'a SequenceBuffer,
    cursor: i64,
    last_target: i64,
}

impl<'a> WScan<'a> {
    fn new(buf: &'a SequenceBuffer) -> Self {
        WScan {
            buf,
            cursor: first_recurrence_index(buf),
            last_target: i64::MIN,
        }
    }

    fn next_at_least(&mut self, n: i64) -> Result<i64> {
        if n < self.last_target {
            self.cursor = first_recurrence_index(self.buf);
        }
        self.last_target = n;
        let last = self.buf.last_index();
        while self.cursor <= last {
            if min_parent_spot(self.buf, self.cursor)? >= n {
                return Ok(self.cursor);
            }
            self.cursor += 1;
        }
        Err(Error::BufferExhausted(format!(
            "no index up to {last} has both parent spots >= {n}"
        )))
    }
}

/// Generation boundaries, 1-indexed through accessors.
///
/// `p_s` and `p` hold one extra entry (generation `k_max + 1`), since R(k)
/// and the slow/noisy split both need P(k+1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationTable {
    pub k_max: usize,
    pub p_s: Vec<i64>,
    pub p: Vec<i64>,
    pub r: Vec<i64>,
}

impl GenerationTable {
    pub fn p(&self, k: usize) -> i64 {
        self.p[k - 1]
    }

    pub fn p_s(&self, k: usize) -> i64 {
        self.p_s[k - 1]
    }

    pub fn r(&self, k: usize) -> i64 {
        self.r[k - 1]
    }

    /// Generation `k` whose noisy window `[P(k), R(k)]` contains `n`.
    pub fn noisy_generation(&self, n: i64) -> Option<usize> {
        (1..=self.k_max).find(|&k| self.p(k) <= n && n <= self.r(k))
    }

    /// Descriptions of violated structural expectations: `P(k) <= R(k)` and
    /// strictly increasing P and R from k = 2.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for k in 1..=self.k_max {
            if self.p(k) > self.r(k) {
                out.push(format!("P({k})={} > R({k})={}", self.p(k), self.r(k)));
            }
        }
        for k in 2..self.k_max {
            if self.p(k) >= self.p(k + 1) {
                out.push(format!("P({k}) >= P({})", k + 1));
            }
            if self.r(k) >= self.r(k + 1) {
                out.push(format!("R({k}) >= R({})", k + 1));
            }
        }
        out
    }
}

/// Builds P_s, P (through `k_max + 1`) and R (through `k_max`).
pub fn generation_table(buf: &SequenceBuffer, k_max: usize) -> Result<GenerationTable> {
    if k_max == 0 {
        return Err(Error::InvalidParams("k_max must be at least 1".into()));
    }
    let mut p_s = vec![1i64, 4];
    let mut scan = WScan::new(buf);
    while p_s.len() < k_max + 1 {
        let prev = *p_s.last().expect("seeded");
        p_s.push(scan.next_at_least(prev)?);
    }
    p_s.truncate(k_max + 1);
    let p: Vec<i64> = p_s
        .iter()
        .enumerate()
        .map(|(i, &x)| if i < 2 { x } else { x + 3 })
        .collect();

    let mut r = vec![1i64, 4];
    // p[k] is P(k+1); R(k) is the largest m with m < P(k+1) - 1
    for &p_next in &p[3..=k_max] {
        r.push(last_non_slow_step(buf, p_next - 2)?);
    }
    r.truncate(k_max);
    Ok(GenerationTable { k_max, p_s, p, r })
}

/// Largest `m <= upper` with `a(m+1) - a(m)` not in {0, 1}.
fn last_non_slow_step(buf: &SequenceBuffer, upper: i64) -> Result<i64> {
    if buf.get(upper + 1).is_none() {
        return Err(Error::BufferExhausted(format!("need a({})", upper + 1)));
    }
    let mut m = upper;
    let mut next = buf.term(m + 1)?;
    while m >= buf.origin_index() {
        let cur = buf.term(m)?;
        if !matches!(next - cur, 0 | 1) {
            return Ok(m);
        }
        next = cur;
        m -= 1;
    }
    Err(Error::BufferExhausted(format!(
        "no non-slow step at or below {upper}"
    )))
}

/// Evaluates a V-shaped recurrence far enough to cover generation
/// `k_max + 1`. Starts at `3 * 2^(k_max + 1)` terms and doubles on
/// exhaustion.
pub fn evaluate_generations(
    spec: &RecurrenceSpec,
    ic: &[i64],
    k_max: usize,
) -> Result<(SequenceBuffer, GenerationTable)> {
    let mut cap = 3u64 << (k_max + 1).min(40);
    loop {
        let (buf, outcome) = eval_single(spec, ic, cap)?;
        match generation_table(&buf, k_max) {
            Ok(gen) => return Ok((buf, gen)),
            Err(Error::BufferExhausted(msg)) => {
                if let Some(d) = outcome.death() {
                    return Err(Error::BufferExhausted(format!(
                        "{msg}; sequence dies at {}",
                        d.death_index
                    )));
                }
                cap *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Noise moments over one generation window `[lo, hi]`.
///
/// Sums are exact over `t(n) = 2 a(n) - n = 2 S_c(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenerationMoments {
    pub k: usize,
    pub lo: i64,
    pub hi: i64,
    pub count: u64,
    pub sum_t: i128,
    pub sum_t_squared: i128,
    /// `<S_c>_k`
    pub mean: f64,
    /// `<S_c^2>_k`
    pub mean_square: f64,
    /// Standard deviation `M_k`.
    pub m: f64,
    /// `log2(M_k / M_{k-1})`; absent when either is zero or for k = 1.
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoiseStats {
    pub generations: Vec<GenerationMoments>,
}

impl NoiseStats {
    pub fn get(&self, k: usize) -> &GenerationMoments {
        &self.generations[k - 1]
    }

    pub fn alpha(&self, k: usize) -> Option<f64> {
        self.generations
            .get(k.wrapping_sub(1))
            .and_then(|g| g.alpha)
    }
}

fn window_moments(buf: &SequenceBuffer, k: usize, lo: i64, hi: i64) -> Result<GenerationMoments> {
    buf.term(lo)?;
    buf.term(hi)?;
    let mut sum_t = 0i128;
    let mut sum_t2 = 0i128;
    for n in lo..=hi {
        let t = 2 * i128::from(buf.term(n)?) - i128::from(n);
        sum_t += t;
        sum_t2 += t * t;
    }
    let count = (hi - lo + 1) as u64;
    let l = count as i128;
    // M^2 = (L * sum t^2 - (sum t)^2) / (4 L^2), exact up to the final division
    let var_numer = l * sum_t2 - sum_t * sum_t;
    let denom = 4.0 * (l as f64) * (l as f64);
    Ok(GenerationMoments {
        k,
        lo,
        hi,
        count,
        sum_t,
        sum_t_squared: sum_t2,
        mean: sum_t as f64 / (2.0 * l as f64),
        mean_square: sum_t2 as f64 / (4.0 * l as f64),
        m: (var_numer as f64 / denom).sqrt(),
        alpha: None,
    })
}

/// Moments of `S_c` over each window `[P(k), R(k)]` (inclusive) and the
/// exponents alpha(k).
pub fn alpha_table(buf: &SequenceBuffer, gen: &GenerationTable) -> Result<NoiseStats> {
    let mut generations = (1..=gen.k_max)
        .into_par_iter()
        .map(|k| window_moments(buf, k, gen.p(k), gen.r(k)))
        .collect::<Result<Vec<_>>>()?;
    for i in 1..generations.len() {
        let (prev, cur) = (generations[i - 1].m, generations[i].m);
        if prev > 0.0 && cur > 0.0 {
            generations[i].alpha = Some((cur / prev).log2());
        }
    }
    Ok(NoiseStats { generations })
}

/// `t / 2` for an integer `t`, printed exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HalfInteger(pub i64);

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.0;
        if t % 2 == 0 {
            write!(f, "{}", t / 2)
        } else {
            let sign = if t < 0 { "-" } else { "" };
            write!(f, "{sign}{}.5", t.unsigned_abs() / 2)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Slow,
    Noisy,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Slow => "slow",
            Region::Noisy => "noisy",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlotPoint {
    pub n: i64,
    pub s_c: HalfInteger,
    pub region: Region,
}

/// `(n, S_c(n), region)` for `from <= n <= to`. The range must lie below
/// P(k_max + 1), beyond which regions are unknown.
pub fn plot_data<'a>(
    buf: &'a SequenceBuffer,
    gen: &'a GenerationTable,
    from: i64,
    to: i64,
) -> Result<impl Iterator<Item = PlotPoint> + 'a> {
    let limit = gen.p[gen.k_max] - 1;
    if from > to || to > limit {
        return Err(Error::OutOfRange {
            index: to,
            first: from,
            last: limit,
        });
    }
    buf.term(from)?;
    buf.term(to)?;
    Ok((from..=to).map(move |n| {
        let a = buf.get(n).expect("checked range");
        PlotPoint {
            n,
            s_c: HalfInteger(2 * a - n),
            region: if gen.noisy_generation(n).is_some() {
                Region::Noisy
            } else {
                Region::Slow
            },
        }
    }))
}

/// How well generation `k` is fed by generation `k - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParentDiagnostic {
    pub k: usize,
    pub terms: u64,
    /// Terms whose mother and father spots both lie in `[P(k-1), P(k) - 1]`.
    pub both_parents_in_previous: u64,
    /// Terms with a parent spot at or after `P(k)`.
    pub parent_in_own_generation: u64,
}

pub fn parent_diagnostic(
    buf: &SequenceBuffer,
    gen: &GenerationTable,
    k: usize,
) -> Result<ParentDiagnostic> {
    if !(3..=gen.k_max).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "generation {k} outside 3..={}",
            gen.k_max
        )));
    }
    let (prev_lo, prev_hi) = (gen.p(k - 1), gen.p(k) - 1);
    let mut diag = ParentDiagnostic {
        k,
        terms: 0,
        both_parents_in_previous: 0,
        parent_in_own_generation: 0,
    };
    for n in gen.p(k)..=gen.r(k) {
        let mother = n - buf.term(n - MOTHER_SHIFT)?;
        let father = n - buf.term(n - FATHER_SHIFT)?;
        diag.terms += 1;
        if [mother, father]
            .iter()
            .all(|s| (prev_lo..=prev_hi).contains(s))
        {
            diag.both_parents_in_previous += 1;
        }
        if mother >= gen.p(k) || father >= gen.p(k) {
            diag.parent_in_own_generation += 1;
        }
    }
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_single;
    use crate::recurrence::RecurrenceSpec;

    fn vc(cap: u64) -> SequenceBuffer {
        eval_single(&RecurrenceSpec::v(), &[3, 4, 5, 4, 5, 6], cap)
            .unwrap()
            .0
    }

    #[test]
    fn min_spot_examples() {
        let buf = vc(100);
        // V_c(7) = V_c(7 - 6) + V_c(7 - 5) = 3 + 4
        assert_eq!(buf.get(7), Some(7));
        assert_eq!(min_parent_spot(&buf, 7).unwrap(), 1);
        let expect8 = (8 - buf.get(4).unwrap()).min(8 - buf.get(7).unwrap());
        assert_eq!(min_parent_spot(&buf, 8).unwrap(), expect8);
        assert!(min_parent_spot(&buf, 6).is_err());

        let ones = eval_single(&RecurrenceSpec::v(), &[1, 1, 1, 1], 10)
            .unwrap()
            .0;
        assert_eq!(min_parent_spot(&ones, 5).unwrap(), 4);
    }

    #[test]
    fn w_values() {
        let buf = vc(1000);
        assert_eq!(W(&buf, 1).unwrap(), 7);
        assert_eq!(W(&buf, 4).unwrap(), 14);
        let small = vc(10);
        assert!(matches!(W(&small, 1000), Err(Error::BufferExhausted(_))));
    }

    #[test]
    fn first_generations() {
        let buf = vc(2000);
        let gen = generation_table(&buf, 5).unwrap();
        assert_eq!(&gen.p[..5], &[1, 4, 17, 37, 78]);
        assert_eq!(gen.r, vec![1, 4, 18, 45, 111]);
        assert_eq!(gen.p_s(3), 14);
        assert!(gen.violations().is_empty());
    }

    #[test]
    fn region_examples() {
        let buf = vc(2000);
        let gen = generation_table(&buf, 4).unwrap();
        let pts: Vec<_> = plot_data(&buf, &gen, 17, 19).unwrap().collect();
        assert_eq!(pts[0].region, Region::Noisy);
        assert_eq!(pts[2].n, 19);
        assert_eq!(pts[2].region, Region::Slow);
        assert!(plot_data(&buf, &gen, 17, gen.p(5)).is_err());
    }

    #[test]
    fn half_integers() {
        assert_eq!(HalfInteger(6).to_string(), "3");
        assert_eq!(HalfInteger(7).to_string(), "3.5");
        assert_eq!(HalfInteger(-3).to_string(), "-1.5");
        assert_eq!(HalfInteger(-1).to_string(), "-0.5");
        assert_eq!(HalfInteger(0).to_string(), "0");
    }

    #[test]
    fn constant_noise_has_no_alpha() {
        // 2a(n) - n cannot stay constant across both parities, so every
        // window holds a single term.
        let buf = SequenceBuffer::from_terms(1, (1..=40).map(|n| n / 2 + 3).collect());
        let gen = GenerationTable {
            k_max: 3,
            p_s: vec![1, 4, 10, 20],
            p: vec![2, 4, 10, 20],
            r: vec![2, 4, 10],
        };
        let stats = alpha_table(&buf, &gen).unwrap();
        for g in &stats.generations {
            assert_eq!(g.m, 0.0);
            assert_eq!(g.alpha, None);
        }
    }

    #[test]
    fn moments_match_direct_formula() {
        let buf = vc(2000);
        let gen = generation_table(&buf, 5).unwrap();
        let stats = alpha_table(&buf, &gen).unwrap();
        for g in &stats.generations {
            let xs: Vec<f64> = (g.lo..=g.hi)
                .map(|n| buf.get(n).unwrap() as f64 - n as f64 / 2.0)
                .collect();
            let mean = xs.iter().sum::<f64>() / xs.len() as f64;
            let var = xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64 - mean * mean;
            assert!((g.mean - mean).abs() < 1e-9);
            assert!((g.m - var.max(0.0).sqrt()).abs() < 1e-9);
        }
        assert_eq!(stats.alpha(1), None);
        assert_eq!(stats.alpha(2), None); // M_1 = 0 on a single-term window
    }

    #[test]
    fn parent_diagnostic_runs() {
        let buf = vc(2000);
        let gen = generation_table(&buf, 6).unwrap();
        let d = parent_diagnostic(&buf, &gen, 5).unwrap();
        assert_eq!(d.terms as i64, gen.r(5) - gen.p(5) + 1);
        assert!(d.both_parents_in_previous <= d.terms);
        assert!(parent_diagnostic(&buf, &gen, 2).is_err());
    }
}
