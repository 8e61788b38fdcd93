use num_integer::Integer;
use num_traits::ToPrimitive;

use super::point::RationalPoint;
use crate::numerics::{arithmetic_tables, BigInt, SIEVE_LIMIT};
use crate::{Error, Result};

/// One full period of the orbit of `(1/n, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicOrbitReport {
    pub order: u64,
    pub period: u64,
    /// `Σ_{m ≤ n} φ(m)`
    pub farey_count: u64,
    pub itinerary: Vec<u64>,
    pub itinerary_sum: u64,
    /// `Σ (k_i - 3)` over the period.
    pub f_period: i64,
    /// Whether `n·a_j` runs through the Farey denominators of order `n`.
    pub farey_denominators_match: bool,
}

impl PeriodicOrbitReport {
    pub fn hall_shiu_holds(&self) -> bool {
        self.itinerary_sum == 3 * self.period - 1
    }

    pub fn period_matches(&self) -> bool {
        self.period == self.farey_count
    }

    pub fn ok(&self) -> bool {
        self.hall_shiu_holds() && self.period_matches() && self.farey_denominators_match
    }
}

/// Denominators of the Farey fractions of order `n` in `[0, 1)`, ascending by value.
fn farey_denominators(n: u64) -> Vec<u64> {
    let mut fr: Vec<(u64, u64)> = (1..=n)
        .flat_map(|q| (0..q).filter(move |&p| p.gcd(&q) == 1).map(move |p| (p, q)))
        .collect();
    fr.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
    fr.into_iter().map(|(_, q)| q).collect()
}

/// Iterates `(1/n, 1)` until it first returns.
pub fn periodic_orbit(n: u64) -> Result<PeriodicOrbitReport> {
    if n == 0 || n as usize > SIEVE_LIMIT {
        return Err(Error::InvalidInput(format!("order {n} out of range")));
    }
    // (a, b) = (x/n, y/n)
    let (x0, y0) = (1u64, n);
    let (mut x, mut y) = (x0, y0);
    let mut itinerary = Vec::new();
    let mut xs = Vec::new();
    loop {
        xs.push(x);
        let k = (n + x) / y;
        itinerary.push(k);
        (x, y) = (y, k * y - x);
        if (x, y) == (x0, y0) {
            break;
        }
    }
    let period = itinerary.len() as u64;
    let itinerary_sum: u64 = itinerary.iter().sum();
    Ok(PeriodicOrbitReport {
        order: n,
        period,
        farey_count: arithmetic_tables(n as usize).totient_sum(n as usize),
        f_period: itinerary_sum as i64 - 3 * period as i64,
        itinerary,
        itinerary_sum,
        farey_denominators_match: xs == farey_denominators(n),
    })
}

/// `(n, A_n)` with `n = ⌊q/a⌋` where `b/a = p/q` in lowest terms.
pub fn period_of_rational(pt: &RationalPoint) -> Result<(u64, u64)> {
    let (a, b, d) = pt.scaled();
    let n = d / a.gcd(b);
    let n = n
        .to_usize()
        .filter(|&n| n <= SIEVE_LIMIT)
        .ok_or_else(|| Error::InvalidInput(format!("order {n} too large")))?;
    Ok((n as u64, arithmetic_tables(n).totient_sum(n)))
}

/// Steps until the orbit of `pt` returns, giving up after `budget` steps.
pub fn iterate_period(pt: &RationalPoint, budget: u64) -> Result<u64> {
    let (a0, b0, d) = pt.scaled();
    let (a0, b0) = (a0.clone(), b0.clone());
    let (mut a, mut b) = (a0.clone(), b0.clone());
    for steps in 1..=budget {
        let k: BigInt = (d + &a).div_floor(&b);
        let next = &k * &b - &a;
        a = std::mem::replace(&mut b, next);
        if a == a0 && b == b0 {
            return Ok(steps);
        }
    }
    Err(Error::BudgetExceeded { budget })
}
