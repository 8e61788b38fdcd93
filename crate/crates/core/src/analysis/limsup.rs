use num_traits::One;

use crate::bcz::Direction;
use crate::numerics::BigRational;

/// The limsup of `log|f_n| / log n` predicted from the even and odd exponents.
///
/// Forward: `max{(e⁻-1)/e⁻, (e⁺-2)/e⁺}`. Backward swaps the roles of the exponents.
pub fn theoretical_limsup(e_plus: f64, e_minus: f64, direction: Direction) -> f64 {
    let (x, y) = match direction {
        Direction::Forward => (e_minus, e_plus),
        Direction::Backward => (e_plus, e_minus),
    };
    ((x - 1.0) / x).max((y - 2.0) / y)
}

/// Exact form of [`theoretical_limsup`] for rational exponents.
pub fn theoretical_limsup_exact(
    e_plus: &BigRational,
    e_minus: &BigRational,
    direction: Direction,
) -> BigRational {
    let (x, y) = match direction {
        Direction::Forward => (e_minus, e_plus),
        Direction::Backward => (e_plus, e_minus),
    };
    let one = BigRational::one();
    let two = &one + &one;
    let first = (x - &one) / x;
    let second = (y - &two) / y;
    first.max(second)
}
