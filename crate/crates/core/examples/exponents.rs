//! Slopes built for target exponents and the exponents read back from them.

use bcz::contfrac::{estimate_exponents, ContinuedFraction};

fn main() -> bcz::Result<()> {
    for (ep, em) in [(2.0, 2.0), (2.0, 3.0), (3.0, 2.0), (4.0, 2.5)] {
        let cf = ContinuedFraction::construct(ep, em)?;
        let est = estimate_exponents(&cf, 14, 6)?;
        let coeffs: Vec<String> = cf.coeffs(8)?.iter().map(|c| c.to_string()).collect();
        println!(
            "target ({ep}, {em}): [{}…] estimated ({:.3}, {:.3})",
            coeffs.join(","),
            est.e_plus,
            est.e_minus
        );
    }
    Ok(())
}
