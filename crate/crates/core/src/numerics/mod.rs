//! Exact rational arithmetic, certified interval evaluation over a real number
//! given by its continued fraction, and the small sieves used for counting.

mod certified;
mod interval;
mod sieve;

pub use certified::{certified_floor, refine, CertifiedReal, DEFAULT_MAX_BITS};
pub use interval::{AffineForm, Interval};
pub use sieve::{arithmetic_tables, ArithmeticTables, SIEVE_LIMIT};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `⌊x⌋` for an exact rational.
pub fn floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Builds `n/d` in lowest terms. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` into a reduced rational. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("not an exact rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// `p/q` serialization used by the CSV writers.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Natural logarithm of a positive big integer, accurate to f64 precision.
pub fn ln_bigint(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Best-effort f64 of a rational of any size.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() && (v != 0.0 || x.is_zero()) {
            return v;
        }
    }
    if x.is_zero() {
        return 0.0;
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    let n = x.numer().abs();
    let d = x.denom();
    (ln_bigint(&n) - ln_bigint(d)).exp() * sign
}

/// Decimal rendering with `sig` significant digits, as used in CSV interval columns.
///
/// Magnitudes outside `[1e-6, 1e15)` switch to exponent notation.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-6..15).contains(&mag) {
        let decimals = (sig as i32 - 1 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{:.*e}", sig.saturating_sub(1), x)
    }
}
