//! The BCZ map `T(a, b) = (b, ⌊(1 + a)/b⌋·b - a)` on the Farey triangle,
//! its orbits and the partial sums of its itinerary.

mod orbit;
mod periodic;
mod point;

pub use orbit::{orbit_iter, Direction, Orbit, OrbitOptions, OrbitState};
pub use periodic::{iterate_period, period_of_rational, periodic_orbit, PeriodicOrbitReport};
pub use point::{FareyPoint, RationalPoint, Slope, SlopePoint, XValue};

use num_traits::Zero;

use crate::numerics::{BigInt, BigRational, Interval};
use crate::Result;

/// `k(a, b) = ⌊(1 + a)/b⌋`.
pub fn itinerary_k(pt: &FareyPoint) -> Result<BigInt> {
    pt.k()
}

pub fn bcz_step(pt: &FareyPoint) -> Result<FareyPoint> {
    pt.step()
}

/// `T⁻¹(a, b) = (k(b, a)·a - b, a)`.
pub fn bcz_inverse(pt: &FareyPoint) -> Result<FareyPoint> {
    pt.inverse()
}

/// `R(a, b) = 1/(ab)`, exact for rational points.
pub fn return_time(pt: &FareyPoint) -> Interval {
    match pt {
        FareyPoint::Rational(r) => Interval::point(return_time_exact(&r.a(), &r.b())),
        FareyPoint::Slope(_) => (&pt.a_interval() * &pt.b_interval())
            .recip()
            .expect("coordinates are positive"),
    }
}

/// `1/(ab)` for any positive rationals.
pub fn return_time_exact(a: &BigRational, b: &BigRational) -> BigRational {
    (a * b).recip()
}

/// `(k(a, b) + k(b, a))/2`.
pub fn khat(pt: &FareyPoint) -> Result<BigRational> {
    let sum = pt.k()? + pt.k_transpose()?;
    Ok(BigRational::new(sum, BigInt::from(2)))
}

/// `f̂_n = Σ_{i=1}^{n} (k̂(T^{i-1}(a, b)) - 3)` for `n = 1..=N`.
pub fn fhat_series(pt: &FareyPoint, n: usize) -> Result<Vec<BigRational>> {
    let three = BigRational::from_integer(BigInt::from(3));
    let mut acc = BigRational::zero();
    let mut cur = pt.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        acc += khat(&cur)? - &three;
        out.push(acc.clone());
        cur = cur.step()?;
    }
    Ok(out)
}
