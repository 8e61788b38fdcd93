//! Deep points of slope orbits: brute-force records against the closed form and
//! the lattice search.

use bcz::bcz::FareyPoint;
use bcz::contfrac::ContinuedFraction;
use bcz::excursion::{
    deepest_subsequence_bruteforce, deepest_subsequence_formula, deepest_subsequence_search, first_mismatch,
};
use bcz::numerics::DEFAULT_MAX_BITS;

fn main() -> bcz::Result<()> {
    for (name, cf) in [
        ("golden", ContinuedFraction::golden()),
        ("(4,2)", ContinuedFraction::construct(4.0, 2.0)?),
    ] {
        let pt = FareyPoint::from_slope(cf.clone())?;
        let brute = deepest_subsequence_bruteforce(&pt, 200_000)?;
        let formula = deepest_subsequence_formula(&cf, &pt, brute.len(), DEFAULT_MAX_BITS)?;
        let search = deepest_subsequence_search(&pt, 12, 1 << 16)?;
        println!(
            "{name}: {} records, formula mismatch {:?}, search mismatch {:?}",
            brute.len(),
            first_mismatch(&brute, &formula),
            first_mismatch(&brute[..12.min(brute.len())], &search[..12.min(brute.len())])
        );
        for (d, f) in brute.iter().zip(&formula).take(12) {
            let offset = f.offset.as_ref().map_or("-".to_string(), |m| m.to_string());
            println!(
                "  i={:<3} n={:<7} block={} offset={offset:<3} a≈{:.3e}",
                d.i,
                d.n.unwrap(),
                f.block.unwrap_or(0),
                d.a.to_f64()
            );
        }
    }
    Ok(())
}
