//! Excursions between deep orbit points, the coprime-pair count of their
//! lengths, and the deepest-point subsequence with its block structure.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::f64::consts::PI;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bcz::{orbit_iter, Direction, FareyPoint, XValue};
use crate::contfrac::ContinuedFraction;
use crate::numerics::{arithmetic_tables, BigInt, BigRational, SIEVE_LIMIT};
use crate::{Error, Result};

/// An orbit segment `a_s, …, a_t` whose interior values all exceed both endpoints.
#[derive(Clone, Debug)]
pub struct Excursion {
    pub s: usize,
    pub t: usize,
    pub a_s: XValue,
    pub a_t: XValue,
}

impl Excursion {
    pub fn len(&self) -> usize {
        self.t - self.s
    }

    pub fn is_empty(&self) -> bool {
        self.t == self.s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every pair `(s, t)` satisfying the depth condition.
    All,
    /// Consecutive new-minimum indices, starting from index 0.
    BetweenRecords,
}

fn less(x: &XValue, y: &XValue) -> Result<bool> {
    Ok(x.cmp(y)? == Ordering::Less)
}

/// Excursions inside a window of orbit values.
///
/// Endpoints may be equal to each other; interior values must be strictly larger.
pub fn detect_excursions(a: &[XValue], mode: Mode) -> Result<Vec<Excursion>> {
    let mut out = Vec::new();
    let mk = |s: usize, t: usize| Excursion {
        s,
        t,
        a_s: a[s].clone(),
        a_t: a[t].clone(),
    };
    match mode {
        Mode::All => {
            for s in 0..a.len() {
                // min over a[s+1..t]
                let mut interior_min: Option<&XValue> = None;
                for t in s + 1..a.len() {
                    match interior_min {
                        None => out.push(mk(s, t)),
                        Some(m) => {
                            if !less(&a[s], m)? {
                                break;
                            }
                            if less(&a[t], m)? {
                                out.push(mk(s, t));
                            }
                        }
                    }
                    if interior_min.map_or(Ok(true), |m| less(&a[t], m))? {
                        interior_min = Some(&a[t]);
                    }
                }
            }
        }
        Mode::BetweenRecords => {
            if a.is_empty() {
                return Ok(out);
            }
            let mut record = 0;
            let mut interior_min: Option<usize> = None;
            for t in 1..a.len() {
                if less(&a[t], &a[record])? {
                    let strict = match interior_min {
                        None => true,
                        Some(m) => less(&a[record], &a[m])?,
                    };
                    if strict {
                        out.push(mk(record, t));
                    }
                    record = t;
                    interior_min = None;
                } else if interior_min.map_or(Ok(true), |m| less(&a[t], &a[m]))? {
                    interior_min = Some(t);
                }
            }
        }
    }
    Ok(out)
}

/// An excursion found while streaming an orbit, with its partial sums.
#[derive(Clone, Debug)]
pub struct OrbitExcursion {
    pub excursion: Excursion,
    pub f_s: BigInt,
    pub f_t: BigInt,
    /// `k_{s+1}, …, k_t`
    pub ks: Vec<BigInt>,
}

/// Excursions between consecutive orbit indices `n ≤ N` with `a_n < threshold`.
pub fn orbit_excursions_below(
    pt: &FareyPoint,
    n_steps: usize,
    threshold: &BigRational,
) -> Result<Vec<OrbitExcursion>> {
    let th = XValue::Exact(threshold.clone());
    let mut out = Vec::new();
    let mut last: Option<(usize, XValue, BigInt)> = None;
    let a0 = pt.a_value();
    if less(&a0, &th)? {
        last = Some((0, a0, BigInt::zero()));
    }
    let mut ks = Vec::new();
    for st in orbit_iter(pt, n_steps, Direction::Forward) {
        let st = st?;
        ks.push(st.k.clone());
        if less(&st.a, &th)? {
            let n = st.n as usize;
            if let Some((s, a_s, f_s)) = last.take() {
                out.push(OrbitExcursion {
                    excursion: Excursion {
                        s,
                        t: n,
                        a_s,
                        a_t: st.a.clone(),
                    },
                    f_s,
                    f_t: st.f.clone(),
                    ks: std::mem::take(&mut ks),
                });
            }
            ks.clear();
            last = Some((n, st.a, st.f));
        }
    }
    Ok(out)
}

fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("count {x} does not fit in 64 bits")))
}

fn check_unit(a: &XValue, b: &XValue) -> Result<()> {
    let one = XValue::Exact(BigRational::one());
    let zero = XValue::Exact(BigRational::zero());
    for x in [a, b] {
        if x.cmp(&zero)? != Ordering::Greater || x.cmp(&one)? == Ordering::Greater {
            return Err(Error::InvalidInput("values must lie in (0, 1]".into()));
        }
    }
    Ok(())
}

/// `|{(u, v) ∈ ℕ² : u·a + v·b ≤ 1, gcd(u, v) = 1}|` by direct enumeration.
pub fn coprime_pair_count(a: &XValue, b: &XValue) -> Result<u64> {
    check_unit(a, b)?;
    let one = BigInt::one();
    let mut count = 0u64;
    for u in 1u64.. {
        let v_max = XValue::floor_quotient(&one, &BigInt::from(u), a, &one, b)?;
        if v_max < one {
            break;
        }
        let v_max = to_u64(&v_max)?;
        count += (1..=v_max).filter(|v| v.gcd(&u) == 1).count() as u64;
    }
    Ok(count)
}

/// The same count as `Σ_d μ(d)·Σ_u ⌊(1/d - u·a)/b⌋`.
pub fn coprime_pair_count_mobius(a: &XValue, b: &XValue) -> Result<u64> {
    check_unit(a, b)?;
    let one = BigInt::one();
    let sum = a.combine(&one, b, &one)?;
    let d_max = XValue::floor_quotient(&one, &BigInt::zero(), a, &one, &sum)?;
    if d_max < one {
        return Ok(0);
    }
    let d_max = d_max
        .to_usize()
        .filter(|&d| d <= SIEVE_LIMIT)
        .ok_or_else(|| Error::InvalidInput("values too small for the sieve".into()))?;
    let mu = arithmetic_tables(d_max).mobius;
    let mut total: i128 = 0;
    for (d, &m) in mu.iter().enumerate().skip(1) {
        if m == 0 {
            continue;
        }
        let dd = BigInt::from(d);
        let mut inner: i128 = 0;
        for u in 1u64.. {
            let du = &dd * u;
            let v = XValue::floor_quotient(&one, &du, a, &dd, b)?;
            if v < one {
                break;
            }
            inner += i128::from(to_u64(&v)?);
        }
        total += i128::from(m) * inner;
    }
    u64::try_from(total).map_err(|_| Error::InvalidInput(format!("negative count {total}")))
}

/// The coprime pairs `(u, v)` with `u·a_s + v·a_t ≤ 1`, in increasing order of `v/u`.
///
/// Their values `u·a_s + v·a_t` are the interior of the excursion from `a_s` to `a_t`.
pub fn interior_decomposition(a_s: &XValue, a_t: &XValue) -> Result<Vec<(u64, u64)>> {
    check_unit(a_s, a_t)?;
    let one = BigInt::one();
    let mut out = Vec::new();
    for u in 1u64.. {
        let v_max = XValue::floor_quotient(&one, &BigInt::from(u), a_s, &one, a_t)?;
        if v_max < one {
            break;
        }
        out.extend((1..=to_u64(&v_max)?).filter(|v| v.gcd(&u) == 1).map(|v| (u, v)));
    }
    out.sort_by(|x, y| (u128::from(x.1) * u128::from(y.0)).cmp(&(u128::from(y.1) * u128::from(x.0))));
    Ok(out)
}

/// Checks `a_{s+1} = ⌊(1 - a_t)/a_s⌋·a_s + a_t` and `a_{t-1} = a_s + ⌊(1 - a_s)/a_t⌋·a_t`.
pub fn endpoint_formulas_hold(a: &[XValue], e: &Excursion) -> Result<bool> {
    let one = BigInt::one();
    let (s, t) = (&a[e.s], &a[e.t]);
    let first = XValue::floor_quotient(&one, &one, t, &one, s)?;
    let last = XValue::floor_quotient(&one, &one, s, &one, t)?;
    let next = s.combine(&first, t, &one)?;
    let prev = s.combine(&one, t, &last)?;
    Ok(next.same_value(&a[e.s + 1]) && prev.same_value(&a[e.t - 1]))
}

/// `f_t - f_s = ⌊(1 + a_s)/a_t⌋ - ⌊(1 - a_t)/a_s⌋ - 3` over an excursion.
pub fn f_increment(a_s: &XValue, a_t: &XValue) -> Result<BigInt> {
    let one = BigInt::one();
    let up = XValue::floor_quotient(&one, &-&one, a_s, &one, a_t)?;
    let down = XValue::floor_quotient(&one, &one, a_t, &one, a_s)?;
    Ok(up - down - 3)
}

/// Main term and error scale of the excursion length for endpoints `a`, `b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LengthEstimate {
    /// `(3/π²)/(ab)`
    pub main_term: f64,
    /// `max(1/a, 1/b)·ln min(1/a, 1/b)`
    pub error_scale: f64,
}

pub fn excursion_length_estimate(a: f64, b: f64) -> LengthEstimate {
    let (ia, ib) = (1.0 / a, 1.0 / b);
    LengthEstimate {
        main_term: 3.0 / (PI * PI) * ia * ib,
        error_scale: ia.max(ib) * ia.min(ib).ln(),
    }
}

/// `len·a_s·a_t·π²/3`.
pub fn length_ratio(len: usize, a_s: f64, a_t: f64) -> f64 {
    len as f64 * a_s * a_t * PI * PI / 3.0
}

/// A point of the deepest-point subsequence `n_0 < n_1 < …`.
#[derive(Clone, Debug)]
pub struct DeepIndex {
    pub i: usize,
    /// Orbit index, when found by iteration.
    pub n: Option<u64>,
    /// `(p_{n_i}, q_{n_i})`
    pub pair: (BigInt, BigInt),
    /// Block `K` with `c'_{K-1} < i ≤ c'_K`; block 0 holds `i = 0` only.
    pub block: Option<usize>,
    /// `m` with `pair = m·(p'_{2K-1}, q'_{2K-1}) + (p'_{2K-2}, q'_{2K-2})`.
    pub offset: Option<BigInt>,
    pub a: XValue,
}

/// Orbit indices `1 ≤ n ≤ N` with `a_n < min_{0 ≤ j < n} a_j`.
pub fn deepest_subsequence_bruteforce(pt: &FareyPoint, n_steps: usize) -> Result<Vec<DeepIndex>> {
    let mut min = pt.a_value();
    let mut out = Vec::new();
    for st in orbit_iter(pt, n_steps, Direction::Forward) {
        let st = st?;
        if less(&st.a, &min)? {
            min = st.a.clone();
            out.push(DeepIndex {
                i: out.len(),
                n: Some(st.n as u64),
                pair: st.pair,
                block: None,
                offset: None,
                a: st.a,
            });
        }
    }
    Ok(out)
}

fn convergent_within(cf: &ContinuedFraction, k: isize, max_bits: u64) -> Result<(BigInt, BigInt)> {
    if k >= 1 {
        let prev = cf.pair(k - 1)?;
        if prev.1.bits() > max_bits {
            return Err(Error::BudgetExceeded { budget: max_bits });
        }
    }
    cf.pair(k)
}

fn coeff(cf: &ContinuedFraction, n: usize) -> Result<BigInt> {
    cf.coeff(n).ok_or(Error::StreamExhausted { terms: n })
}

/// The first `count` deep points from the block decomposition of the slope.
///
/// Fails with `BudgetExceeded` once the convergents outgrow `max_bits`.
pub fn deepest_subsequence_formula(
    cf: &ContinuedFraction,
    pt: &FareyPoint,
    count: usize,
    max_bits: u64,
) -> Result<Vec<DeepIndex>> {
    let mut out = Vec::with_capacity(count);
    let mut block = 0usize;
    while out.len() < count {
        let k = 2 * block as isize;
        let size = if block == 0 { BigInt::one() } else { coeff(cf, 2 * block)? };
        let base = convergent_within(cf, k - 2, max_bits)?;
        let step = convergent_within(cf, k - 1, max_bits)?;
        let first = if block == 0 { coeff(cf, 0)? } else { BigInt::one() };
        let mut m = first.clone();
        while out.len() < count && m < &first + &size {
            let pair = (&m * &step.0 + &base.0, &m * &step.1 + &base.1);
            out.push(DeepIndex {
                i: out.len(),
                n: None,
                a: pt.value_of_pair(&pair.0, &pair.1),
                pair,
                block: Some(block),
                offset: Some(m.clone()),
            });
            m += 1;
        }
        block += 1;
    }
    Ok(out)
}

/// Next deep point after `d` without iterating the orbit.
///
/// With `e` completing `d` to a basis (`p_e q_d - q_e p_d = 1`), the later orbit
/// points are `v·e + u·d` with `v ≥ 1`; the next deep one has the smallest
/// `v / x` among the reduced values `x = v·x_e mod x_d`.
fn next_deep(
    pt: &FareyPoint,
    d: &(BigInt, BigInt),
    budget: &mut u64,
    limit: u64,
) -> Result<(BigInt, BigInt)> {
    let g = d.1.extended_gcd(&d.0);
    let sign = if g.gcd.is_negative() { -1 } else { 1 };
    if !g.gcd.abs().is_one() {
        return Err(Error::InvalidInput("deep pair is not primitive".into()));
    }
    let e = (&g.x * sign, -&g.y * sign);
    let x_d = pt.value_of_pair(&d.0, &d.1);
    let x_e = pt.value_of_pair(&e.0, &e.1);
    let zero = XValue::Exact(BigRational::zero());
    let mut best: Option<(BigInt, (BigInt, BigInt))> = None;
    let mut v = BigInt::one();
    loop {
        if *budget == 0 {
            return Err(Error::BudgetExceeded { budget: limit });
        }
        *budget -= 1;
        if let Some((bv, bp)) = &best {
            // stop once v/x_d ≥ best ratio: v·x_best - best_v·x_d ≥ 0
            let w = (&v * &bp.0 - bv * &d.0, &v * &bp.1 - bv * &d.1);
            if pt.value_of_pair(&w.0, &w.1).cmp(&zero)? != Ordering::Less {
                break;
            }
        }
        let f = XValue::floor_quotient(&BigInt::zero(), &-&v, &x_e, &BigInt::one(), &x_d)?;
        let pair = (&v * &e.0 - &f * &d.0, &v * &e.1 - &f * &d.1);
        let improves = match &best {
            None => true,
            Some((bv, bp)) => {
                let w = (&v * &bp.0 - bv * &pair.0, &v * &bp.1 - bv * &pair.1);
                pt.value_of_pair(&w.0, &w.1).cmp(&zero)? == Ordering::Less
            }
        };
        if improves {
            best = Some((v.clone(), pair));
        }
        v += 1;
    }
    Ok(best.expect("first candidate is always taken").1)
}

/// The first `count` deep points of a point over an irrational slope, found by
/// lattice search from `a_0` without iterating the orbit.
pub fn deepest_subsequence_search(pt: &FareyPoint, count: usize, budget: u64) -> Result<Vec<DeepIndex>> {
    if pt.is_rational() {
        return Err(Error::InvalidInput("lattice search needs an irrational slope".into()));
    }
    let mut left = budget;
    let mut d = (BigInt::from(-1), BigInt::zero());
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        d = next_deep(pt, &d, &mut left, budget)?;
        out.push(DeepIndex {
            i: out.len(),
            n: None,
            a: pt.value_of_pair(&d.0, &d.1),
            pair: d.clone(),
            block: None,
            offset: None,
        });
    }
    Ok(out)
}

/// First index where the two subsequences carry different pairs, if any.
pub fn first_mismatch(x: &[DeepIndex], y: &[DeepIndex]) -> Option<usize> {
    let n = x.len().min(y.len());
    (0..n)
        .find(|&i| x[i].pair != y[i].pair)
        .or((x.len() != y.len()).then_some(n))
}

/// Measured versus predicted `n_i - n'_{k-1}` for a deep index inside block `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexPrediction {
    pub i: usize,
    /// `i - c'_{k-1}`
    pub offset: u64,
    pub measured: Option<u64>,
    /// `(3/π²)(1/a'_{2k-1})(1/(a'_{2k-2} - offset·a'_{2k-1}) - 1/a'_{2k-2})`
    pub predicted: f64,
}

/// The orbit index `m_i` where `a = a_{n_{c'_k - 1}} + i·a_{n'_k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Marker {
    pub i: u64,
    pub pair: (BigInt, BigInt),
    pub n: Option<u64>,
    /// `i / a'_{2k-1}²`
    pub predicted: f64,
}

#[derive(Clone, Debug)]
pub struct BlockMarkers {
    pub k: usize,
    /// `c'_k = c_2 + ⋯ + c_{2k}`
    pub c_prime: BigInt,
    /// `n'_k = n_{c'_k}`, from the orbit.
    pub n_prime: Option<u64>,
    /// `a'_{2k}`, the deep value at the block end.
    pub a_end: XValue,
    pub a_prime: f64,
    /// `a'_{2k-1}`, absent for `k = 0`.
    pub a_prime_odd: Option<f64>,
    /// `q'_{2k}·q'_{2k+1}`
    pub predicted_order: BigInt,
    /// `1/(a'_{2k-1}·a'_{2k})`
    pub reciprocal_order: Option<f64>,
    /// Whether brute-force detection agreed with the formula pairs of this block.
    pub formula_agrees: bool,
    pub index_predictions: Vec<IndexPrediction>,
    pub markers: Vec<Marker>,
}

/// Block ends, predicted in-block orbit indices and the `m_i` markers of the first
/// `K + 1` blocks, measured on at most `N` orbit steps.
pub fn block_markers(
    cf: &ContinuedFraction,
    pt: &FareyPoint,
    blocks: usize,
    n_steps: usize,
    max_markers: u64,
) -> Result<Vec<BlockMarkers>> {
    let max_bits = pt.slope().map_or(u64::MAX, |s| s.max_bits());
    let mut c_prime = vec![BigInt::zero()];
    for k in 1..=blocks {
        let next = &c_prime[k - 1] + coeff(cf, 2 * k)?;
        c_prime.push(next);
    }
    let total = c_prime[blocks].to_usize().filter(|&c| c < n_steps).ok_or(Error::BudgetExceeded {
        budget: n_steps as u64,
    })? + 1;
    let formula = deepest_subsequence_formula(cf, pt, total, max_bits)?;

    // marker pairs: pair(n_{c'_k - 1}) + i·p'_{2k}
    let mut wanted: HashMap<(BigInt, BigInt), (usize, usize)> = HashMap::new();
    let mut marker_pairs: Vec<Vec<(BigInt, BigInt)>> = vec![Vec::new()];
    for k in 1..=blocks {
        let start = &formula[c_prime[k].to_usize().unwrap() - 1].pair;
        let end = cf.pair(2 * k as isize)?;
        let top = coeff(cf, 2 * k + 1)?.min(BigInt::from(max_markers));
        let mut pairs = Vec::new();
        let mut i = BigInt::zero();
        while i <= top {
            let p = (&start.0 + &i * &end.0, &start.1 + &i * &end.1);
            wanted.insert(p.clone(), (k, pairs.len()));
            pairs.push(p);
            i += 1;
        }
        marker_pairs.push(pairs);
    }

    let mut found_markers: HashMap<(usize, usize), u64> = HashMap::new();
    let mut measured: Vec<Option<u64>> = vec![None; total];
    let mut agrees = vec![true; total];
    let mut min = pt.a_value();
    let mut next_deep = 0usize;
    for st in orbit_iter(pt, n_steps, Direction::Forward) {
        let st = st?;
        if let Some(&slot) = wanted.get(&st.pair) {
            found_markers.entry(slot).or_insert(st.n as u64);
        }
        if less(&st.a, &min)? {
            min = st.a.clone();
            if next_deep < total {
                measured[next_deep] = Some(st.n as u64);
                agrees[next_deep] = formula[next_deep].pair == st.pair;
            }
            next_deep += 1;
            if next_deep == total {
                break;
            }
        }
    }

    let abs_f64 = |k: isize| -> Result<f64> {
        let (p, q) = cf.pair(k)?;
        Ok(pt.value_of_pair(&p, &q).to_f64().abs())
    };
    let mut out = Vec::with_capacity(blocks + 1);
    for k in 0..=blocks {
        let end_i = c_prime[k].to_usize().unwrap();
        let (p, q) = cf.pair(2 * k as isize)?;
        let q_next = cf.pair(2 * k as isize + 1)?.1;
        let a_prime = abs_f64(2 * k as isize)?;
        let a_odd = if k == 0 { None } else { Some(abs_f64(2 * k as isize - 1)?) };
        let first_i = if k == 0 { 0 } else { c_prime[k - 1].to_usize().unwrap() + 1 };
        let mut index_predictions = Vec::new();
        let mut markers = Vec::new();
        if let Some(a_odd) = a_odd {
            let a_even_prev = abs_f64(2 * k as isize - 2)?;
            let prev_end = measured[first_i - 1];
            for i in (first_i..=end_i).take(max_markers as usize) {
                let off = (i - first_i + 1) as u64;
                let predicted = 3.0 / (PI * PI) / a_odd
                    * (1.0 / (a_even_prev - off as f64 * a_odd) - 1.0 / a_even_prev);
                let m = match (measured[i], prev_end) {
                    (Some(x), Some(y)) => Some(x - y),
                    _ => None,
                };
                index_predictions.push(IndexPrediction {
                    i,
                    offset: off,
                    measured: m,
                    predicted,
                });
            }
            for (j, pair) in marker_pairs[k].iter().enumerate() {
                markers.push(Marker {
                    i: j as u64,
                    pair: pair.clone(),
                    n: found_markers.get(&(k, j)).copied(),
                    predicted: j as f64 / (a_odd * a_odd),
                });
            }
        }
        out.push(BlockMarkers {
            k,
            c_prime: c_prime[k].clone(),
            n_prime: measured[end_i],
            a_end: pt.value_of_pair(&p, &q),
            a_prime,
            a_prime_odd: a_odd,
            predicted_order: &q * &q_next,
            reciprocal_order: a_odd.map(|x| 1.0 / (x * a_prime)),
            formula_agrees: agrees[first_i..=end_i].iter().all(|&b| b),
            index_predictions,
            markers,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, ratio};

    fn exact(xs: &[i64], den: i64) -> Vec<XValue> {
        xs.iter().map(|&x| XValue::Exact(ratio(x, den))).collect()
    }

    fn pairs(e: &[Excursion]) -> Vec<(usize, usize)> {
        e.iter().map(|e| (e.s, e.t)).collect()
    }

    fn golden() -> FareyPoint {
        FareyPoint::from_slope(ContinuedFraction::golden()).unwrap()
    }

    #[test]
    fn farey_five_excursions() {
        let a = exact(&[1, 5, 4, 3, 5, 2, 5, 3, 4, 5, 1], 5);
        let all = pairs(&detect_excursions(&a, Mode::All).unwrap());
        for want in [(0, 5), (3, 5), (5, 10), (0, 10)] {
            assert!(all.contains(&want), "{want:?}");
        }
        assert!(!all.contains(&(1, 5)));
        assert!(!all.contains(&(0, 4)));
        // a_0 is the global minimum, so no record follows it
        assert!(detect_excursions(&a, Mode::BetweenRecords).unwrap().is_empty());
        let b = exact(&[5, 4, 2, 3, 1], 5);
        let rec = pairs(&detect_excursions(&b, Mode::BetweenRecords).unwrap());
        assert_eq!(rec, [(0, 1), (1, 2), (2, 4)]);
    }

    #[test]
    fn monotone_and_decimal_windows() {
        let a = exact(&[9, 7, 5, 3, 1], 10);
        let all = pairs(&detect_excursions(&a, Mode::All).unwrap());
        assert_eq!(all, [(0, 1), (1, 2), (2, 3), (3, 4)]);
        let a = exact(&[2, 10, 8, 6, 10, 4], 10);
        assert!(pairs(&detect_excursions(&a, Mode::All).unwrap()).contains(&(0, 5)));
    }

    #[test]
    fn coprime_counts() {
        let x = |n, d| XValue::Exact(ratio(n, d));
        for (a, b, want) in [
            (x(3, 10), x(7, 20), 3),
            (x(1, 5), x(2, 5), 4),
            (x(3, 5), x(3, 5), 0),
            (x(1, 1), x(1, 1), 0),
        ] {
            assert_eq!(coprime_pair_count(&a, &b).unwrap(), want);
            assert_eq!(coprime_pair_count_mobius(&a, &b).unwrap(), want);
        }
        assert!(coprime_pair_count(&x(0, 1), &x(1, 2)).is_err());
    }

    #[test]
    fn length_estimates() {
        let e = excursion_length_estimate(1.0, 1.0);
        assert!((e.main_term - 0.30396).abs() < 1e-4);
        assert_eq!(e.error_scale, 0.0);
        let e = excursion_length_estimate(0.2, 0.4);
        assert!((e.main_term - 3.7995).abs() < 1e-3);
        let e = excursion_length_estimate(1e-3, 1e-3);
        assert!((e.main_term - 303963.55).abs() < 1.0);
    }

    #[test]
    fn thousandth_count_is_near_main_term() {
        let a = XValue::Exact(ratio(1, 1000));
        let count = coprime_pair_count_mobius(&a, &a).unwrap() as f64;
        let main = excursion_length_estimate(1e-3, 1e-3).main_term;
        assert!((count / main - 1.0).abs() < 0.2);
    }

    #[test]
    fn golden_first_deep_point() {
        let deep = deepest_subsequence_bruteforce(&golden(), 50).unwrap();
        assert_eq!(deep[0].n, Some(2));
        assert_eq!(deep[0].pair, (int(1).to_integer(), int(1).to_integer()));
        let v = deep[0].a.to_f64();
        assert!((v - 0.381966).abs() < 1e-6);
        for w in deep.windows(2) {
            assert!(w[0].n < w[1].n);
            assert_eq!(w[1].a.cmp(&w[0].a).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn golden_formula_blocks() {
        let g = golden();
        let cf = ContinuedFraction::golden();
        let f = deepest_subsequence_formula(&cf, &g, 8, 4096).unwrap();
        for (k, d) in f.iter().enumerate() {
            assert_eq!(d.block, Some(k));
            let c = cf.convergent(2 * k).unwrap();
            assert_eq!(d.pair, (c.p, c.q));
        }
        let brute = deepest_subsequence_bruteforce(&g, 5000).unwrap();
        assert_eq!(first_mismatch(&brute, &f[..brute.len()]), None);
        let search = deepest_subsequence_search(&g, 8, 1000).unwrap();
        assert_eq!(first_mismatch(&search, &f), None);
    }

    #[test]
    fn periodic_subsequence_terminates() {
        let pt = FareyPoint::rational(ratio(1, 5), int(1)).unwrap();
        let deep = deepest_subsequence_bruteforce(&pt, 100).unwrap();
        assert!(deep.is_empty());
        let pt = FareyPoint::rational(ratio(2, 7), ratio(6, 7)).unwrap();
        let short = deepest_subsequence_bruteforce(&pt, 200).unwrap().len();
        let long = deepest_subsequence_bruteforce(&pt, 2000).unwrap().len();
        assert_eq!(short, long);
    }

    #[test]
    fn single_point_blocks() {
        // c_{2k} = 1 for every k gives one deep point per block
        let cf = ContinuedFraction::construct(2.0, 3.0).unwrap();
        let pt = FareyPoint::from_slope(cf.clone()).unwrap();
        let f = deepest_subsequence_formula(&cf, &pt, 10, 4096).unwrap();
        for (k, d) in f.iter().enumerate() {
            assert_eq!(d.block, Some(k));
            assert!(d.pair.0.gcd(&d.pair.1).is_one());
        }
        for w in f.windows(2) {
            assert_eq!(w[1].a.cmp(&w[0].a).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn formula_respects_budget() {
        let cf = ContinuedFraction::construct(2.0, 3.0).unwrap();
        let pt = FareyPoint::from_slope(cf.clone()).unwrap();
        assert!(matches!(
            deepest_subsequence_formula(&cf, &pt, 40, 256),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn f_increment_on_farey_five() {
        let a = exact(&[1, 5, 4, 3, 5, 2, 5, 3, 4, 5, 1], 5);
        // f_5 - f_0 = -3 and f_10 - f_5 = 2 for the orbit of (1/5, 1)
        assert_eq!(f_increment(&a[0], &a[5]).unwrap(), BigInt::from(-3));
        assert_eq!(f_increment(&a[5], &a[10]).unwrap(), BigInt::from(2));
        let e = Excursion {
            s: 0,
            t: 5,
            a_s: a[0].clone(),
            a_t: a[5].clone(),
        };
        assert!(endpoint_formulas_hold(&a, &e).unwrap());
    }
}
