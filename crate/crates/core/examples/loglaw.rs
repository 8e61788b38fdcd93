//! `ln f_n / ln n` along golden and `(2,3)` orbits, against the predicted limsup.

use bcz::analysis::{loglaw_scan, theoretical_limsup, LogLawOptions};
use bcz::bcz::{Direction, FareyPoint};
use bcz::contfrac::ContinuedFraction;

fn main() -> bcz::Result<()> {
    for (name, cf, ep, em) in [
        ("golden", ContinuedFraction::golden(), 2.0, 2.0),
        ("(2,3)", ContinuedFraction::construct(2.0, 3.0)?, 2.0, 3.0),
    ] {
        let pt = FareyPoint::from_slope(cf)?;
        let s = loglaw_scan(&pt, 200_000, Direction::Forward, &LogLawOptions::default(), |_| {})?;
        println!(
            "{name}: predicted {:.4}, tail max {:.4} at n = {:?}",
            theoretical_limsup(ep, em, Direction::Forward),
            s.tail_max_ratio.unwrap_or(f64::NAN),
            s.tail_max_n
        );
        for b in &s.block_ends {
            println!("  block end k={} n={} f={} ratio={:?}", b.k, b.n, b.f, b.ratio);
        }
    }
    Ok(())
}
