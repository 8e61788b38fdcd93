//! Excursions of a Farey orbit and of a quadratic-slope orbit, with their lengths
//! compared to the coprime count and to the `3/(π² a_s a_t)` main term.

use bcz::bcz::{orbit_iter, Direction, FareyPoint, XValue};
use bcz::contfrac::ContinuedFraction;
use bcz::excursion::{
    coprime_pair_count_mobius, detect_excursions, excursion_length_estimate, f_increment, orbit_excursions_below, Mode,
};
use bcz::numerics::BigRational;

fn main() -> bcz::Result<()> {
    let pt = FareyPoint::rational(BigRational::new(1.into(), 12.into()), BigRational::from_integer(1.into()))?;
    let mut a: Vec<XValue> = vec![pt.a_value()];
    a.extend(orbit_iter(&pt, 46, Direction::Forward).map(|s| s.map(|s| s.a)).collect::<bcz::Result<Vec<_>>>()?);
    let ex = detect_excursions(&a, Mode::All)?;
    println!("order 12, longest excursions over one period:");
    let mut ex = ex;
    ex.sort_by_key(|e| std::cmp::Reverse(e.len()));
    for e in ex.iter().take(6) {
        println!(
            "  [{}, {}] len {} coprime count {}",
            e.s,
            e.t,
            e.len(),
            coprime_pair_count_mobius(&e.a_s, &e.a_t)?
        );
    }

    let golden = FareyPoint::from_slope(ContinuedFraction::golden())?;
    let threshold = BigRational::new(1.into(), 50.into());
    println!("golden slope, excursions below 1/50 in 100000 steps:");
    for e in orbit_excursions_below(&golden, 100_000, &threshold)?.iter().take(8) {
        let x = &e.excursion;
        let est = excursion_length_estimate(x.a_s.to_f64(), x.a_t.to_f64());
        println!(
            "  [{}, {}] len {} main term {:.1} f_t - f_s {} predicted {}",
            x.s,
            x.t,
            x.len(),
            est.main_term,
            &e.f_t - &e.f_s,
            f_increment(&x.a_s, &x.a_t)?
        );
    }
    Ok(())
}
