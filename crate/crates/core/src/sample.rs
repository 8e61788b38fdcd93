//! Seeded generators for test points.

use rand::Rng;

use crate::bcz::{FareyPoint, RationalPoint};
use crate::contfrac::ContinuedFraction;
use crate::numerics::{BigInt, BigRational};

/// A uniform choice among the points `(x/d, y/d)` of Ω with `d ≤ max_den`.
pub fn rational_point<R: Rng>(rng: &mut R, max_den: u64) -> RationalPoint {
    let d = rng.gen_range(2..=max_den.max(2));
    let x = rng.gen_range(1..=d);
    let y = rng.gen_range(d - x + 1..=d);
    RationalPoint::from_scaled(x.into(), y.into(), d.into()).expect("sampled inside the triangle")
}

/// A positive rational `x/d` with `1 ≤ x ≤ d ≤ max_den`.
pub fn unit_rational<R: Rng>(rng: &mut R, max_den: u64) -> BigRational {
    let d = rng.gen_range(1..=max_den.max(1));
    let x = rng.gen_range(1..=d);
    BigRational::new(x.into(), d.into())
}

/// An eventually periodic slope `[c_0; head, (period)]` with small coefficients.
pub fn periodic_slope<R: Rng>(rng: &mut R, max_coeff: u64) -> ContinuedFraction {
    let top = max_coeff.max(1);
    let head_len = rng.gen_range(1..=4);
    let head = (0..head_len).map(|_| BigInt::from(rng.gen_range(1..=top))).collect();
    let period_len = rng.gen_range(1..=3);
    let period = (0..period_len).map(|_| BigInt::from(rng.gen_range(1..=top))).collect();
    ContinuedFraction::periodic(head, period).expect("positive coefficients")
}

/// `(1/s, 1)` for a random periodic-tail slope `s`.
pub fn slope_point<R: Rng>(rng: &mut R, max_coeff: u64) -> FareyPoint {
    FareyPoint::from_slope(periodic_slope(rng, max_coeff)).expect("slope at least 1")
}
