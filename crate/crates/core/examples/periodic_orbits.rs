//! Periods and itinerary sums of the orbits of `(1/n, 1)`.

use bcz::bcz::periodic_orbit;

fn main() -> bcz::Result<()> {
    println!("{:>4} {:>6} {:>8} {:>9}", "n", "period", "Σ k_i", "Σ(k_i-3)");
    for n in [1, 2, 3, 5, 8, 13, 21, 50, 100] {
        let r = periodic_orbit(n)?;
        assert!(r.ok());
        println!("{n:>4} {:>6} {:>8} {:>9}", r.period, r.itinerary_sum, r.f_period);
    }
    let r = periodic_orbit(5)?;
    println!("itinerary of order 5: {:?}", r.itinerary);
    Ok(())
}
