use std::cmp::Ordering;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::loglaw::require_slope;
use super::ser_bigint;
use crate::bcz::{orbit_iter, Direction, FareyPoint, XValue};
use crate::contfrac::ContinuedFraction;
use crate::excursion::deepest_subsequence_formula;
use crate::numerics::{ln_bigint, ratio, BigInt, BigRational};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct AsymptoticsOptions {
    /// Block ends `n'_0, …, n'_K` to reach.
    pub blocks: usize,
    pub n_steps: usize,
    /// First block whose interior deep indices must satisfy the `0.9/1.1` bound.
    pub onset: usize,
    /// Cap on the number of deep indices collected.
    pub max_points: usize,
}

impl Default for AsymptoticsOptions {
    fn default() -> Self {
        Self {
            blocks: 6,
            n_steps: 1_000_000,
            onset: 3,
            max_points: 10_000,
        }
    }
}

/// Checks at the block end `n'_k`, where `S_k = Σ_{j=0}^{k} (c_{2j+1} - c_{2j})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockEndCheck {
    pub k: usize,
    pub n: i64,
    #[serde(serialize_with = "ser_bigint")]
    pub f: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub s_k: BigInt,
    /// `S_k + 1/a - 4 < f < S_k + 1/a - 2`, decided exactly.
    pub bound_holds: bool,
    pub f_times_a: f64,
    /// `log n'_k / log(q'_{2k} q'_{2k+1})`
    pub order_ratio: Option<f64>,
    /// `S_k · a'_{2k}`
    pub drift_ratio: f64,
}

/// Checks at a deep index strictly inside block `K ≥ 1`, offset `s ∈ [1, c_{2K})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InteriorCheck {
    pub block: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub offset: BigInt,
    pub n: i64,
    #[serde(serialize_with = "ser_bigint")]
    pub f: BigInt,
    /// `S_{K-1} - s + 1/a - 4 < f < S_{K-1} - s + 1/a - 2`
    pub bound_holds: bool,
    /// `0.9/a - s < f < 1.1/a - s`
    pub scaled_bound_holds: bool,
    pub after_onset: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticsReport {
    pub block_ends: Vec<BlockEndCheck>,
    pub interior: Vec<InteriorCheck>,
    /// Whether some reached block has `c_{2K} ≥ 2`.
    pub interior_present: bool,
    /// Orbit records agreed with the block formula.
    pub formula_agrees: bool,
    pub onset: usize,
}

impl AsymptoticsReport {
    /// Block-end bound failures among `k ≥ from`.
    pub fn block_end_failures(&self, from: usize) -> Vec<usize> {
        self.block_ends
            .iter()
            .filter(|b| b.k >= from && !b.bound_holds)
            .map(|b| b.k)
            .collect()
    }

    /// Interior deep indices after the onset violating the scaled bound.
    pub fn scaled_failures_after_onset(&self) -> usize {
        self.interior
            .iter()
            .filter(|c| c.after_onset && !c.scaled_bound_holds)
            .count()
    }
}

fn coeff(cf: &ContinuedFraction, n: usize) -> Result<BigInt> {
    cf.coeff(n).ok_or(Error::StreamExhausted { terms: n })
}

/// `lo < c·a < hi` with either side optional.
fn scaled_between(a: &XValue, c: &BigInt, lo: Option<BigRational>, hi: Option<BigRational>) -> Result<bool> {
    let ca = a.combine(c, a, &BigInt::zero())?;
    if let Some(lo) = lo {
        if ca.cmp(&XValue::Exact(lo))? != Ordering::Greater {
            return Ok(false);
        }
    }
    if let Some(hi) = hi {
        if ca.cmp(&XValue::Exact(hi))? != Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `shift + 1/a - 4 < f < shift + 1/a - 2`, that is `(f - shift + 2)a < 1 < (f - shift + 4)a`.
fn reciprocal_bound(a: &XValue, f: &BigInt, shift: &BigInt) -> Result<bool> {
    let one = BigRational::from_integer(1.into());
    Ok(scaled_between(a, &(f - shift + 2), None, Some(one.clone()))?
        && scaled_between(a, &(f - shift + 4), Some(one), None)?)
}

fn f64_of(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Exact block-end bounds, interior bounds and drift ratios along the deep
/// subsequence of a forward orbit.
pub fn subsequence_asymptotics_check(pt: &FareyPoint, opts: &AsymptoticsOptions) -> Result<AsymptoticsReport> {
    let cf = require_slope(pt)?;
    let max_bits = pt.slope().map_or(u64::MAX, |s| s.max_bits());

    let last_end = cf.pair(2 * opts.blocks as isize)?;
    let mut records: Vec<(i64, BigInt, (BigInt, BigInt), XValue)> = Vec::new();
    let mut min = pt.a_value();
    for st in orbit_iter(pt, opts.n_steps, Direction::Forward) {
        let st = st?;
        if st.a.cmp(&min)? == Ordering::Less {
            min = st.a.clone();
            let done = st.pair == last_end;
            records.push((st.n, st.f, st.pair, st.a));
            if done || records.len() >= opts.max_points {
                break;
            }
        }
    }
    let formula = deepest_subsequence_formula(&cf, pt, records.len(), max_bits)?;
    let formula_agrees = formula.iter().zip(&records).all(|(d, r)| d.pair == r.2);

    // S_k for every block reached
    let top_block = formula.last().and_then(|d| d.block).unwrap_or(0);
    let mut s = Vec::with_capacity(top_block + 1);
    let mut acc = BigInt::zero();
    for k in 0..=top_block {
        acc += coeff(&cf, 2 * k + 1)? - coeff(&cf, 2 * k)?;
        s.push(acc.clone());
    }

    let mut block_ends = Vec::new();
    let mut interior = Vec::new();
    let mut interior_present = false;
    for (d, (n, f, _, a)) in formula.iter().zip(&records) {
        let k = d.block.expect("formula points carry a block");
        let m = d.offset.clone().expect("formula points carry an offset");
        let size = if k == 0 { BigInt::from(1) } else { coeff(&cf, 2 * k)? };
        if size >= BigInt::from(2) {
            interior_present = true;
        }
        let is_end = k == 0 || m == size;
        if is_end {
            let q = &cf.pair(2 * k as isize)?.1;
            let q1 = &cf.pair(2 * k as isize + 1)?.1;
            let denom = ln_bigint(q) + ln_bigint(q1);
            block_ends.push(BlockEndCheck {
                k,
                n: *n,
                f: f.clone(),
                s_k: s[k].clone(),
                bound_holds: reciprocal_bound(a, f, &s[k])?,
                f_times_a: f64_of(f) * a.to_f64(),
                order_ratio: (denom > 0.0 && *n >= 2).then(|| (*n as f64).ln() / denom),
                drift_ratio: f64_of(&s[k]) * a.to_f64(),
            });
        } else {
            let shift = &s[k - 1] - &m;
            interior.push(InteriorCheck {
                block: k,
                offset: m.clone(),
                n: *n,
                f: f.clone(),
                bound_holds: reciprocal_bound(a, f, &shift)?,
                scaled_bound_holds: scaled_between(a, &(f + &m), Some(ratio(9, 10)), Some(ratio(11, 10)))?,
                after_onset: k >= opts.onset,
            });
        }
    }
    Ok(AsymptoticsReport {
        block_ends,
        interior,
        interior_present,
        formula_agrees,
        onset: opts.onset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_block_ends() {
        let pt = FareyPoint::from_slope(ContinuedFraction::golden()).unwrap();
        let opts = AsymptoticsOptions {
            blocks: 4,
            n_steps: 5000,
            ..Default::default()
        };
        let rep = subsequence_asymptotics_check(&pt, &opts).unwrap();
        assert!(rep.formula_agrees);
        assert!(!rep.interior_present);
        let ns: Vec<i64> = rep.block_ends.iter().map(|b| b.n).collect();
        assert_eq!(ns, [2, 8, 46, 302, 2060]);
        assert!(rep.block_end_failures(0).is_empty());
        assert!(rep.block_ends.iter().all(|b| b.s_k.is_zero()));
    }

    #[test]
    fn interior_points_of_wide_block() {
        let cf = ContinuedFraction::construct(4.0, 2.0).unwrap();
        let pt = FareyPoint::from_slope(cf).unwrap();
        let opts = AsymptoticsOptions {
            blocks: 3,
            n_steps: 20_000,
            onset: 3,
            max_points: 30,
        };
        let rep = subsequence_asymptotics_check(&pt, &opts).unwrap();
        assert!(rep.formula_agrees);
        assert!(rep.interior_present);
        assert!(rep.interior.iter().all(|c| c.bound_holds));
        assert!(rep.block_end_failures(0).is_empty());
    }
}
