//! The first steps of a rational and an irrational orbit.

use bcz::bcz::{orbit_iter, Direction, FareyPoint};
use bcz::contfrac::ContinuedFraction;
use bcz::numerics::BigRational;

fn main() -> bcz::Result<()> {
    let rational = FareyPoint::rational(BigRational::new(3.into(), 7.into()), BigRational::new(5.into(), 6.into()))?;
    println!("(3/7, 5/6):");
    for st in orbit_iter(&rational, 8, Direction::Forward) {
        let st = st?;
        println!("  n={:<3} k={:<3} f={:<4} a={}", st.n, st.k, st.f, st.a.exact().unwrap());
    }

    let golden = FareyPoint::from_slope(ContinuedFraction::golden())?;
    println!("golden slope, both directions:");
    for dir in [Direction::Forward, Direction::Backward] {
        for st in orbit_iter(&golden, 6, dir) {
            let st = st?;
            println!("  n={:<3} k={:<3} f={:<4} a≈{:.9}", st.n, st.k, st.f, st.a.to_f64());
        }
    }
    Ok(())
}
