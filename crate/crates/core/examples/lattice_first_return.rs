//! The lattice of a point, its horocycle return, and primitive vectors ordered by slope.

use bcz::bcz::RationalPoint;
use bcz::lattice::{first_return_check, gauss_reduce, lattice_of_point, primitive_points_by_slope};
use bcz::numerics::BigRational;

fn main() -> bcz::Result<()> {
    let p = RationalPoint::new(BigRational::new(3.into(), 7.into()), BigRational::new(5.into(), 6.into()))?;
    println!("first return holds: {}", first_return_check(&p)?);
    let (u, v) = gauss_reduce(&lattice_of_point(&p));
    println!("reduced basis: ({}, {}), ({}, {})", u.0, u.1, v.0, v.1);

    let mut cur = p.clone();
    let xs = primitive_points_by_slope(&p, 8, 1 << 20)?;
    for (x, y) in xs {
        cur = cur.step();
        println!("  ({x}, {y})  orbit a = {}", cur.a());
    }
    Ok(())
}
