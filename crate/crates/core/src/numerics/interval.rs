use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{floor, BigInt, BigRational};
use crate::{Error, Result};

/// Closed rational interval `[lo, hi]`.
///
/// Every operation returns an interval that contains the exact result for all
/// choices of operands inside the inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("interval lo {lo} > hi {hi}")));
        }
        Ok(Self { lo, hi })
    }

    /// Builds the hull of two values in either order.
    pub fn hull(x: BigRational, y: BigRational) -> Self {
        if x <= y {
            Self { lo: x, hi: y }
        } else {
            Self { lo: y, hi: x }
        }
    }

    pub fn point(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Strictly positive on the whole interval.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn scale(&self, c: &BigRational) -> Interval {
        Interval::hull(&self.lo * c, &self.hi * c)
    }

    pub fn shift(&self, c: &BigRational) -> Interval {
        Interval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    /// `1/x`; fails when the interval touches zero.
    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::InvalidInput("reciprocal of interval containing 0".into()));
        }
        Ok(Interval::hull(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        Ok(self * &other.recip()?)
    }

    /// `(⌊lo⌋, ⌊hi⌋)`; the floor of every member lies between them.
    pub fn floor_bounds(&self) -> (BigInt, BigInt) {
        (floor(&self.lo), floor(&self.hi))
    }

    /// The common floor of all members, if there is one.
    pub fn certain_floor(&self) -> Option<BigInt> {
        let (a, b) = self.floor_bounds();
        (a == b).then_some(a)
    }

    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (
            super::rational_to_f64(&self.lo),
            super::rational_to_f64(&self.hi),
        )
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

/// `constant + coeff · s` for a single real `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub constant: BigRational,
    pub coeff: BigRational,
}

impl AffineForm {
    pub fn new(constant: BigRational, coeff: BigRational) -> Self {
        Self { constant, coeff }
    }

    pub fn constant(c: BigRational) -> Self {
        Self {
            constant: c,
            coeff: BigRational::zero(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn eval(&self, s: &BigRational) -> BigRational {
        &self.constant + &self.coeff * s
    }

    /// Exact image of an interval (affine maps are monotone).
    pub fn eval_interval(&self, s: &Interval) -> Interval {
        Interval::hull(self.eval(s.lo()), self.eval(s.hi()))
    }
}
