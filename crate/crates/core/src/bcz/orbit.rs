use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::point::{FareyPoint, XValue};
use crate::numerics::{BigInt, Interval};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            _ => Err(Error::Parse(format!("direction must be forward or backward, got {s:?}"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct OrbitOptions {
    /// Re-derive each new coordinate of a slope orbit from the two previous
    /// enclosures and check it against the integer-pair evaluation.
    /// Costs roughly forty times the plain step.
    pub cross_check: bool,
}

/// One step of an orbit.
///
/// Forward state `n ≥ 1` describes `Tⁿ(a, b) = (a_n, a_{n+1})` with
/// `k_n = k(T^{n-1}(a, b))` and `f_n = Σ_{i=1}^{n} (k_i - 3)`.
/// Backward state `n = -m` describes `T^{-m}(a, b)` with `k_{-m}` and
/// `f_{-m} = Σ_{i=0}^{m} (k_{-i} - 3)`.
///
/// In both directions `a_n = q_n·b - p_n·a`.
#[derive(Clone, Debug)]
pub struct OrbitState {
    pub n: i64,
    pub k: BigInt,
    pub f: BigInt,
    /// `(p_n, q_n)`
    pub pair: (BigInt, BigInt),
    /// `(p_{n+1}, q_{n+1})`
    pub next_pair: (BigInt, BigInt),
    /// `a_n`
    pub a: XValue,
    pub point: FareyPoint,
}

/// Lazy orbit. Yields `Err` once and then stops if a floor cannot be certified.
pub struct Orbit {
    point: FareyPoint,
    direction: Direction,
    remaining: usize,
    n: i64,
    f: BigInt,
    pair: (BigInt, BigInt),
    next_pair: (BigInt, BigInt),
    pending_k: Option<BigInt>,
    k0: Option<BigInt>,
    enclosure: Option<(Interval, Interval)>,
    cross_check: bool,
    failed: bool,
}

/// Iterates `N` states of the orbit of `pt` in the given direction.
pub fn orbit_iter(pt: &FareyPoint, n: usize, direction: Direction) -> Orbit {
    Orbit::with_options(pt, n, direction, OrbitOptions::default())
}

impl Orbit {
    pub fn with_options(
        pt: &FareyPoint,
        n: usize,
        direction: Direction,
        opts: OrbitOptions,
    ) -> Self {
        let cross_check = opts.cross_check && !pt.is_rational();
        Self {
            point: pt.clone(),
            direction,
            remaining: n,
            n: 0,
            f: BigInt::zero(),
            pair: (BigInt::from(-1), BigInt::zero()),
            next_pair: (BigInt::zero(), BigInt::from(1)),
            pending_k: None,
            k0: None,
            enclosure: cross_check.then(|| (pt.a_interval(), pt.b_interval())),
            cross_check,
            failed: false,
        }
    }

    /// `k_0 = k(T^{-1}(a, b))`, available once a backward orbit has started.
    pub fn k0(&self) -> Option<&BigInt> {
        self.k0.as_ref()
    }

    fn check(&mut self, k: &BigInt) {
        let Some((lo, hi)) = self.enclosure.take() else {
            return;
        };
        let kk = Interval::point(k.clone().into());
        // a_{n+1} = k_n a_n - a_{n-1}, read forwards or backwards
        let (fresh, keep, derived) = match self.direction {
            Direction::Forward => (self.point.b_interval(), hi.clone(), &(&kk * &hi) - &lo),
            Direction::Backward => (self.point.a_interval(), lo.clone(), &(&kk * &lo) - &hi),
        };
        let both = fresh.intersect(&derived).unwrap_or_else(|| {
            panic!(
                "orbit cross-check failed at n = {}: pair enclosure {fresh} misses {derived}",
                self.n
            )
        });
        self.enclosure = Some(match self.direction {
            Direction::Forward => (keep, both),
            Direction::Backward => (both, keep),
        });
    }

    fn advance(&mut self) -> Result<OrbitState> {
        let k = match self.direction {
            Direction::Forward => {
                let k = self.point.k()?;
                self.point = step_with(&self.point, &k, Direction::Forward);
                let next = lin(&k, &self.next_pair, &self.pair);
                self.pair = std::mem::replace(&mut self.next_pair, next);
                self.n += 1;
                if self.cross_check {
                    self.check(&k);
                }
                self.f += &k - 3;
                k
            }
            Direction::Backward => {
                let k_here = match self.pending_k.take() {
                    Some(k) => k,
                    None => {
                        let k0 = self.point.k_transpose()?;
                        self.f += &k0 - 3;
                        self.k0 = Some(k0.clone());
                        k0
                    }
                };
                let prev_point = step_with(&self.point, &k_here, Direction::Backward);
                let k = prev_point.k_transpose()?;
                self.point = prev_point;
                let prev = lin(&k_here, &self.pair, &self.next_pair);
                self.next_pair = std::mem::replace(&mut self.pair, prev);
                self.n -= 1;
                if self.cross_check {
                    self.check(&k_here);
                }
                self.pending_k = Some(k.clone());
                self.f += &k - 3;
                k
            }
        };
        Ok(OrbitState {
            n: self.n,
            k,
            f: self.f.clone(),
            pair: self.pair.clone(),
            next_pair: self.next_pair.clone(),
            a: self.point.a_value(),
            point: self.point.clone(),
        })
    }
}

fn lin(k: &BigInt, x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (k * &x.0 - &y.0, k * &x.1 - &y.1)
}

fn step_with(pt: &FareyPoint, k: &BigInt, dir: Direction) -> FareyPoint {
    match (pt, dir) {
        (FareyPoint::Rational(r), Direction::Forward) => FareyPoint::Rational(r.step()),
        (FareyPoint::Rational(r), Direction::Backward) => FareyPoint::Rational(r.inverse()),
        (FareyPoint::Slope(s), Direction::Forward) => FareyPoint::Slope(s.step_with(k)),
        (FareyPoint::Slope(s), Direction::Backward) => FareyPoint::Slope(s.inverse_with(k)),
    }
}

impl Iterator for Orbit {
    type Item = Result<OrbitState>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 || self.failed {
            return None;
        }
        self.remaining -= 1;
        let r = self.advance();
        self.failed = r.is_err();
        Some(r)
    }
}
