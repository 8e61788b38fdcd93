//! `h` of an orbit window, peeled down by eliminating maxima.

use bcz::analysis::{eliminate_max, h, reduce_fully, PositiveSequence};
use bcz::bcz::{orbit_iter, Direction, FareyPoint};
use bcz::numerics::BigRational;

fn main() -> bcz::Result<()> {
    let pt = FareyPoint::rational(BigRational::new(1.into(), 7.into()), BigRational::from_integer(1.into()))?;
    let mut terms = vec![pt.a_value()];
    terms.extend(orbit_iter(&pt, 18, Direction::Forward).map(|s| s.unwrap().a));
    let seq = PositiveSequence::new(terms)?;
    println!("h of a_0..a_18 = {}", h(&seq)?);

    let mut cur = seq.clone();
    while let Ok((next, r)) = eliminate_max(&cur) {
        println!("  removed term {r}, {} left, h = {}", next.len(), h(&next)?);
        cur = next;
    }
    let red = reduce_fully(&seq)?;
    let kept: Vec<String> = red.sequence.rationals().unwrap().iter().map(|x| x.to_string()).collect();
    println!("fully reduced: [{}]", kept.join(", "));
    Ok(())
}
