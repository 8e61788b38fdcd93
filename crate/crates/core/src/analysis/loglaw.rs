use std::cmp::Ordering;
use std::collections::HashMap;

use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bcz::{orbit_iter, Direction, FareyPoint, OrbitState, XValue};
use crate::contfrac::{cf_of_rational, ContinuedFraction};
use crate::numerics::{ln_bigint, BigInt, BigRational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeMarker {
    Plain,
    Deep,
    BlockEnd,
}

impl ProbeMarker {
    pub fn is_deep(self) -> bool {
        self != ProbeMarker::Plain
    }
}

/// `log|f_n| / log|n|` at one orbit index with `f_n ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogLawProbe {
    pub n: i64,
    pub f: BigInt,
    /// Present iff `|f_n| ≥ 1` and `|n| ≥ 2`.
    pub ratio: Option<f64>,
    /// Same ratio for `f̂_n`, forward orbits only.
    pub fhat_ratio: Option<f64>,
    pub marker: ProbeMarker,
}

/// A deep index whose pair is, up to sign, the convergent `(p'_j, q'_j)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockEndProbe {
    /// `⌊j / 2⌋`
    pub k: usize,
    pub convergent: usize,
    pub n: i64,
    #[serde(serialize_with = "crate::analysis::ser_bigint")]
    pub f: BigInt,
    pub ratio: Option<f64>,
    pub f_times_a: f64,
    /// `log|n| / log(q'_j q'_{j+1})`
    pub order_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogLawSummary {
    pub direction: String,
    pub steps: usize,
    pub tail_start: u64,
    pub tail_max_ratio: Option<f64>,
    pub tail_max_n: Option<i64>,
    pub tail_max_fhat_ratio: Option<f64>,
    pub deep_count: usize,
    pub block_ends: Vec<BlockEndProbe>,
}

impl LogLawSummary {
    pub fn blockend_ratios(&self) -> Vec<f64> {
        self.block_ends.iter().filter_map(|b| b.ratio).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct LogLawOptions {
    /// First `|n|` of the running-max window; `⌈√N⌉` when unset.
    pub tail_start: Option<u64>,
}

fn log_ratio(x: f64, n: i64) -> Option<f64> {
    let n = n.unsigned_abs();
    (x.abs() >= 1.0 && n >= 2).then(|| x.abs().ln() / (n as f64).ln())
}

fn ceil_sqrt(n: u64) -> u64 {
    let r = n.sqrt();
    if r * r < n {
        r + 1
    } else {
        r
    }
}

fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

struct ConvergentIndex {
    cf: ContinuedFraction,
    next: usize,
    last_q: BigInt,
    done: bool,
    by_pair: HashMap<(BigInt, BigInt), usize>,
    qs: Vec<BigInt>,
}

impl ConvergentIndex {
    fn new(cf: ContinuedFraction) -> Self {
        Self {
            cf,
            next: 0,
            last_q: BigInt::zero(),
            done: false,
            by_pair: HashMap::new(),
            qs: Vec::new(),
        }
    }

    fn extend(&mut self) -> bool {
        if self.done {
            return false;
        }
        match self.cf.pair(self.next as isize) {
            Ok((p, q)) => {
                self.last_q = q.clone();
                self.qs.push(q.clone());
                self.by_pair.insert((p, q), self.next);
                self.next += 1;
                true
            }
            Err(_) => {
                self.done = true;
                false
            }
        }
    }

    fn lookup(&mut self, pair: &(BigInt, BigInt)) -> Option<usize> {
        let key = if pair.1.is_negative() {
            (-&pair.0, -&pair.1)
        } else {
            pair.clone()
        };
        while self.last_q <= key.1 && self.extend() {}
        self.by_pair.get(&key).copied()
    }

    fn q(&mut self, j: usize) -> Option<BigInt> {
        while self.qs.len() <= j && self.extend() {}
        self.qs.get(j).cloned()
    }
}

/// Marks records and block ends while an orbit is streamed.
pub struct DeepTracker {
    min: XValue,
    convergents: ConvergentIndex,
}

impl DeepTracker {
    pub fn new(pt: &FareyPoint) -> Result<Self> {
        Ok(Self {
            min: pt.a_value(),
            convergents: ConvergentIndex::new(slope_cf(pt)?),
        })
    }

    /// Classifies the next state; block ends also return the convergent index `j`.
    pub fn observe(&mut self, st: &OrbitState) -> Result<(ProbeMarker, Option<usize>)> {
        if st.a.cmp(&self.min)? != Ordering::Less {
            return Ok((ProbeMarker::Plain, None));
        }
        self.min = st.a.clone();
        Ok(match self.convergents.lookup(&st.pair) {
            Some(j) => (ProbeMarker::BlockEnd, Some(j)),
            None => (ProbeMarker::Deep, None),
        })
    }

    /// `log|n| / log(q'_j q'_{j+1})`
    fn order_ratio(&mut self, j: usize, n: i64) -> Option<f64> {
        let q = self.convergents.q(j)?;
        let q1 = self.convergents.q(j + 1)?;
        let denom = ln_bigint(&q) + ln_bigint(&q1);
        (denom > 0.0 && n.unsigned_abs() >= 2).then(|| (n.unsigned_abs() as f64).ln() / denom)
    }
}

fn slope_cf(pt: &FareyPoint) -> Result<ContinuedFraction> {
    match pt {
        FareyPoint::Slope(s) => Ok(s.slope().continued_fraction()),
        FareyPoint::Rational(r) => cf_of_rational(&(r.b() / r.a())),
    }
}

/// Streams probes of `N` orbit steps to `sink` and returns the summary.
///
/// Deep indices are the records `a_n < min_{|j| < |n|} a_j`; block ends are
/// the deep indices whose pair is a convergent of the slope up to sign.
pub fn loglaw_scan(
    pt: &FareyPoint,
    n_steps: usize,
    direction: Direction,
    opts: &LogLawOptions,
    mut sink: impl FnMut(&LogLawProbe),
) -> Result<LogLawSummary> {
    let tail_start = opts.tail_start.unwrap_or_else(|| ceil_sqrt(n_steps as u64));
    let mut tracker = DeepTracker::new(pt)?;
    let k0 = pt.k_transpose()?;
    let mut prev_f = BigInt::zero();
    let mut summary = LogLawSummary {
        direction: direction.to_string(),
        steps: n_steps,
        tail_start,
        tail_max_ratio: None,
        tail_max_n: None,
        tail_max_fhat_ratio: None,
        deep_count: 0,
        block_ends: Vec::new(),
    };
    for st in orbit_iter(pt, n_steps, direction) {
        let st = st?;
        let (marker, end) = tracker.observe(&st)?;
        if marker.is_deep() {
            summary.deep_count += 1;
        }
        if let Some(j) = end {
            summary.block_ends.push(BlockEndProbe {
                k: j / 2,
                convergent: j,
                n: st.n,
                f: st.f.clone(),
                ratio: log_ratio(to_f64(&st.f), st.n),
                f_times_a: to_f64(&st.f) * st.a.to_f64(),
                order_ratio: tracker.order_ratio(j, st.n),
            });
        }
        let fhat_ratio = match direction {
            // 2f̂_n = f_n + f_{n-1} + k_0 - 3
            Direction::Forward => {
                let twice = &st.f + &prev_f + &k0 - 3;
                log_ratio(to_f64(&twice) / 2.0, st.n)
            }
            Direction::Backward => None,
        };
        prev_f = st.f.clone();
        if st.f.is_zero() {
            continue;
        }
        let probe = LogLawProbe {
            n: st.n,
            ratio: log_ratio(to_f64(&st.f), st.n),
            f: st.f,
            fhat_ratio,
            marker,
        };
        if probe.n.unsigned_abs() >= tail_start {
            if let Some(r) = probe.ratio {
                if summary.tail_max_ratio.is_none_or(|m| r > m) {
                    summary.tail_max_ratio = Some(r);
                    summary.tail_max_n = Some(probe.n);
                }
            }
            if let Some(r) = probe.fhat_ratio {
                if summary.tail_max_fhat_ratio.is_none_or(|m| r > m) {
                    summary.tail_max_fhat_ratio = Some(r);
                }
            }
        }
        sink(&probe);
    }
    Ok(summary)
}

/// Probes of `N` orbit steps together with their summary.
pub fn loglaw_probe(
    pt: &FareyPoint,
    n_steps: usize,
    direction: Direction,
) -> Result<(Vec<LogLawProbe>, LogLawSummary)> {
    let mut probes = Vec::new();
    let summary = loglaw_scan(pt, n_steps, direction, &LogLawOptions::default(), |p| {
        probes.push(p.clone())
    })?;
    Ok((probes, summary))
}

/// `f̂_n` from the `f` series: `(f_n + f_{n-1} + k_0 - 3)/2` with `f_0 = 0`.
pub fn fhat_from_f(f: &[BigInt], k0: &BigInt) -> Vec<BigRational> {
    let mut prev = BigInt::zero();
    f.iter()
        .map(|fi| {
            let twice = fi + &prev + k0 - 3;
            prev = fi.clone();
            BigRational::new(twice, BigInt::from(2))
        })
        .collect()
}

pub(crate) fn require_slope(pt: &FareyPoint) -> Result<ContinuedFraction> {
    pt.slope()
        .map(|s| s.continued_fraction())
        .ok_or_else(|| Error::InvalidInput("a continued-fraction point is required".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcz::fhat_series;

    fn golden() -> FareyPoint {
        FareyPoint::from_slope(ContinuedFraction::golden()).unwrap()
    }

    #[test]
    fn golden_forward_markers() {
        let (probes, summary) = loglaw_probe(&golden(), 400, Direction::Forward).unwrap();
        // f_2 = 0 is not emitted
        assert!(probes.iter().all(|p| p.n != 2 && !p.f.is_zero()));
        let ends: Vec<i64> = summary.block_ends.iter().map(|b| b.n).collect();
        assert_eq!(ends, [2, 8, 46, 302]);
        assert!(summary.block_ends.iter().all(|b| b.convergent % 2 == 0));
        assert_eq!(summary.tail_start, 20);
        for p in &probes {
            assert_eq!(p.ratio.is_some(), p.n >= 2);
        }
    }

    #[test]
    fn golden_backward_block_ends_use_odd_convergents() {
        let (_, summary) = loglaw_probe(&golden(), 200, Direction::Backward).unwrap();
        let ends: Vec<(i64, usize)> = summary.block_ends.iter().map(|b| (b.n, b.convergent)).collect();
        assert_eq!(ends, [(-2, 1), (-16, 3), (-113, 5)]);
    }

    #[test]
    fn fhat_identity_matches_direct_series() {
        let pt = golden();
        let f: Vec<BigInt> = orbit_iter(&pt, 300, Direction::Forward)
            .map(|s| s.unwrap().f)
            .collect();
        let k0 = pt.k_transpose().unwrap();
        assert_eq!(fhat_from_f(&f, &k0), fhat_series(&pt, 300).unwrap());
    }
}
