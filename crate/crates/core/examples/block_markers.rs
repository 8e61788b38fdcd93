//! Block ends and in-block markers for the slope with exponents `(4, 2)`.

use bcz::bcz::FareyPoint;
use bcz::contfrac::ContinuedFraction;
use bcz::excursion::block_markers;

fn main() -> bcz::Result<()> {
    let cf = ContinuedFraction::construct(4.0, 2.0)?;
    let pt = FareyPoint::from_slope(cf.clone())?;
    for b in block_markers(&cf, &pt, 3, 200_000, 6)? {
        println!(
            "block {}: c' = {}, n' = {:?}, a' ≈ {:.3e}, formula agrees {}",
            b.k, b.c_prime, b.n_prime, b.a_prime, b.formula_agrees
        );
        for m in &b.markers {
            println!("    marker i={} n={:?} predicted {:.1}", m.i, m.n, m.predicted);
        }
    }
    Ok(())
}
