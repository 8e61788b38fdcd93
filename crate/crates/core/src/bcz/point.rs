use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::contfrac::ContinuedFraction;
use crate::numerics::{
    rational_to_f64, AffineForm, BigInt, BigRational, CertifiedReal, Interval, DEFAULT_MAX_BITS,
};
use crate::{Error, Result};

/// An irrational slope `s > 0` shared by every point of an orbit.
///
/// Points over a slope have coordinates `q - p/s` for integer pairs `(p, q)`,
/// so every floor and comparison they need is a certified question about a
/// Möbius function of `s`. The enclosure of `s` only ever shrinks, and all
/// clones see the refinements made through any of them.
#[derive(Clone)]
pub struct Slope {
    real: Arc<Mutex<CertifiedReal>>,
    max_bits: u64,
}

impl Slope {
    pub fn new(cf: ContinuedFraction) -> Result<Self> {
        Ok(Self {
            real: Arc::new(Mutex::new(CertifiedReal::new(cf)?)),
            max_bits: DEFAULT_MAX_BITS,
        })
    }

    pub fn with_max_bits(mut self, max_bits: u64) -> Self {
        self.max_bits = max_bits;
        self
    }

    pub fn max_bits(&self) -> u64 {
        self.max_bits
    }

    pub fn continued_fraction(&self) -> ContinuedFraction {
        self.real.lock().unwrap().continued_fraction().clone()
    }

    pub fn interval(&self) -> Interval {
        self.real.lock().unwrap().interval()
    }

    pub fn precision_bits(&self) -> u64 {
        self.real.lock().unwrap().precision_bits()
    }

    /// Certified `⌊(n0 + n1·s)/(d0 + d1·s)⌋`.
    pub fn floor_ratio(&self, n0: &BigInt, n1: &BigInt, d0: &BigInt, d1: &BigInt) -> Result<BigInt> {
        self.real
            .lock()
            .unwrap()
            .floor_ratio_int(n0, n1, d0, d1, self.max_bits)
    }

    /// Certified sign of `c0 + c1·s`.
    pub fn sign(&self, c0: &BigInt, c1: &BigInt) -> Result<Ordering> {
        self.real.lock().unwrap().sign_int(c0, c1, self.max_bits)
    }

    /// Certified sign of an affine form with rational coefficients.
    pub fn sign_form(&self, form: &AffineForm) -> Result<Ordering> {
        self.real.lock().unwrap().sign(form, self.max_bits)
    }

    /// Enclosure of `q - p/s` at the current precision.
    pub fn coordinate(&self, p: &BigInt, q: &BigInt) -> Interval {
        let real = self.real.lock().unwrap();
        let ((p0, q0), (p1, q1)) = real.bracket();
        let at = |num: &BigInt, den: &BigInt| {
            BigRational::from_integer(q.clone()) - BigRational::new(p * den, num.clone())
        };
        Interval::hull(at(p0, q0), at(p1, q1))
    }

    /// Enclosure of `q - p/s` with relative width at most `2^-rel_bits`.
    pub fn coordinate_rel(&self, p: &BigInt, q: &BigInt, rel_bits: u64) -> Result<Interval> {
        self.real.lock().unwrap().ratio_interval_int(
            &-p,
            q,
            &BigInt::zero(),
            &BigInt::one(),
            rel_bits,
            self.max_bits,
        )
    }

    fn same(&self, other: &Slope) -> bool {
        Arc::ptr_eq(&self.real, &other.real)
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Slope({})", self.continued_fraction())
    }
}

/// A coordinate value: exact, or `q - p/s` over a certified slope.
#[derive(Clone, Debug)]
pub enum XValue {
    Exact(BigRational),
    Linear { p: BigInt, q: BigInt, slope: Slope },
}

impl XValue {
    pub fn interval(&self) -> Interval {
        match self {
            XValue::Exact(x) => Interval::point(x.clone()),
            XValue::Linear { p, q, slope } => slope.coordinate(p, q),
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            XValue::Exact(x) => Some(x),
            XValue::Linear { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            XValue::Exact(x) => rational_to_f64(x),
            XValue::Linear { p, q, slope } => {
                let iv = slope
                    .coordinate_rel(p, q, 53)
                    .unwrap_or_else(|_| slope.coordinate(p, q));
                rational_to_f64(&iv.midpoint())
            }
        }
    }

    /// Certified comparison.
    pub fn cmp(&self, other: &XValue) -> Result<Ordering> {
        match (self, other) {
            (XValue::Exact(x), XValue::Exact(y)) => Ok(x.cmp(y)),
            (
                XValue::Linear { p, q, slope },
                XValue::Linear {
                    p: p2,
                    q: q2,
                    slope: s2,
                },
            ) if slope.same(s2) => slope.sign(&(p2 - p), &(q - q2)),
            (XValue::Linear { p, q, slope }, XValue::Exact(r)) => {
                // q - p/s - r has the sign of (q - r)s - p
                let form = AffineForm::new(
                    BigRational::from_integer(-p),
                    BigRational::from_integer(q.clone()) - r,
                );
                slope.sign_form(&form)
            }
            (XValue::Exact(_), XValue::Linear { .. }) => other.cmp(self).map(Ordering::reverse),
            _ => Err(Error::InvalidInput("values over different slopes".into())),
        }
    }

    /// `(p, q)` of a value over a slope.
    pub fn pair(&self) -> Option<(&BigInt, &BigInt)> {
        match self {
            XValue::Exact(_) => None,
            XValue::Linear { p, q, .. } => Some((p, q)),
        }
    }

    /// Exact equality; values over a slope are equal iff their pairs are.
    pub fn same_value(&self, other: &XValue) -> bool {
        match (self, other) {
            (XValue::Exact(x), XValue::Exact(y)) => x == y,
            (
                XValue::Linear { p, q, slope },
                XValue::Linear {
                    p: p2,
                    q: q2,
                    slope: s2,
                },
            ) => slope.same(s2) && p == p2 && q == q2,
            _ => false,
        }
    }

    /// `m·self + n·other`.
    pub fn combine(&self, m: &BigInt, other: &XValue, n: &BigInt) -> Result<XValue> {
        match (self, other) {
            (XValue::Exact(x), XValue::Exact(y)) => Ok(XValue::Exact(
                BigRational::from_integer(m.clone()) * x + BigRational::from_integer(n.clone()) * y,
            )),
            (
                XValue::Linear { p, q, slope },
                XValue::Linear {
                    p: p2,
                    q: q2,
                    slope: s2,
                },
            ) if slope.same(s2) => Ok(XValue::Linear {
                p: m * p + n * p2,
                q: m * q + n * q2,
                slope: slope.clone(),
            }),
            _ => Err(Error::InvalidInput("values over different slopes".into())),
        }
    }

    /// Certified `⌊(c - u·a)/(v·b)⌋` for `v·b > 0`.
    pub fn floor_quotient(c: &BigInt, u: &BigInt, a: &XValue, v: &BigInt, b: &XValue) -> Result<BigInt> {
        match (a, b) {
            (XValue::Exact(a), XValue::Exact(b)) => {
                let num = BigRational::from_integer(c.clone()) - BigRational::from_integer(u.clone()) * a;
                let den = BigRational::from_integer(v.clone()) * b;
                Ok(crate::numerics::floor(&(num / den)))
            }
            (
                XValue::Linear { p, q, slope },
                XValue::Linear {
                    p: p2,
                    q: q2,
                    slope: s2,
                },
            ) if slope.same(s2) => {
                // ((c - u·q_a)s + u·p_a) / (v·q_b·s - v·p_b)
                slope.floor_ratio(&(u * p), &(c - u * q), &-(v * p2), &(v * q2))
            }
            _ => Err(Error::InvalidInput("values over different slopes".into())),
        }
    }
}

/// A rational point `(A/D, B/D)` of the Farey triangle.
///
/// The triple is kept with `gcd(A, B, D) = 1`; the map preserves `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    a: BigInt,
    b: BigInt,
    d: BigInt,
}

impl RationalPoint {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self> {
        let d = a.denom().lcm(b.denom());
        let an = a.numer() * (&d / a.denom());
        let bn = b.numer() * (&d / b.denom());
        Self::from_scaled(an, bn, d)
    }

    /// The point `(a/d, b/d)`.
    pub fn from_scaled(a: BigInt, b: BigInt, d: BigInt) -> Result<Self> {
        if !d.is_positive()
            || !a.is_positive()
            || !b.is_positive()
            || a > d
            || b > d
            || &a + &b <= d
        {
            return Err(Error::NotInTriangle(format!("({a}/{d}, {b}/{d})")));
        }
        let g = a.gcd(&b).gcd(&d);
        Ok(Self {
            a: a / &g,
            b: b / &g,
            d: d / &g,
        })
    }

    pub fn a(&self) -> BigRational {
        BigRational::new(self.a.clone(), self.d.clone())
    }

    pub fn b(&self) -> BigRational {
        BigRational::new(self.b.clone(), self.d.clone())
    }

    /// `(A, B, D)` with `a = A/D`, `b = B/D`.
    pub fn scaled(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.d)
    }

    pub fn k(&self) -> BigInt {
        (&self.d + &self.a).div_floor(&self.b)
    }

    pub fn k_transpose(&self) -> BigInt {
        (&self.d + &self.b).div_floor(&self.a)
    }

    pub fn step(&self) -> Self {
        let k = self.k();
        Self {
            a: self.b.clone(),
            b: k * &self.b - &self.a,
            d: self.d.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        let k = self.k_transpose();
        Self {
            a: k * &self.a - &self.b,
            b: self.a.clone(),
            d: self.d.clone(),
        }
    }

    pub fn swap(&self) -> Self {
        Self {
            a: self.b.clone(),
            b: self.a.clone(),
            d: self.d.clone(),
        }
    }
}

/// A point over a slope: `a = q_a - p_a/s`, `b = q_b - p_b/s`.
#[derive(Clone, Debug)]
pub struct SlopePoint {
    slope: Slope,
    a: (BigInt, BigInt),
    b: (BigInt, BigInt),
}

impl SlopePoint {
    /// Builds the point and certifies membership in the triangle.
    pub fn new(slope: Slope, a: (BigInt, BigInt), b: (BigInt, BigInt)) -> Result<Self> {
        let pt = Self { slope, a, b };
        pt.check()?;
        Ok(pt)
    }

    fn check(&self) -> Result<()> {
        let s = &self.slope;
        let bad = || Error::NotInTriangle(format!("{self:?}"));
        for (p, q) in [&self.a, &self.b] {
            // 0 < q - p/s ≤ 1  ⇔  qs - p > 0 and (q - 1)s - p ≤ 0
            if s.sign(&-p, q)? != Ordering::Greater {
                return Err(bad());
            }
            if s.sign(&-p, &(q - 1))? == Ordering::Greater {
                return Err(bad());
            }
        }
        // a + b > 1  ⇔  (q_a + q_b - 1)s - (p_a + p_b) > 0
        let c0 = -(&self.a.0 + &self.b.0);
        let c1 = &self.a.1 + &self.b.1 - 1;
        if s.sign(&c0, &c1)? != Ordering::Greater {
            return Err(bad());
        }
        Ok(())
    }

    pub fn slope(&self) -> &Slope {
        &self.slope
    }

    /// `(p, q)` of the first coordinate.
    pub fn a_pair(&self) -> &(BigInt, BigInt) {
        &self.a
    }

    pub fn b_pair(&self) -> &(BigInt, BigInt) {
        &self.b
    }

    fn k_of(&self, x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> Result<BigInt> {
        // ⌊(1 + x)/y⌋ = ⌊((1 + q_x)s - p_x)/(q_y s - p_y)⌋
        self.slope.floor_ratio(&-&x.0, &(&x.1 + 1), &-&y.0, &y.1)
    }

    pub fn k(&self) -> Result<BigInt> {
        self.k_of(&self.a, &self.b)
    }

    pub fn k_transpose(&self) -> Result<BigInt> {
        self.k_of(&self.b, &self.a)
    }

    pub fn step_with(&self, k: &BigInt) -> Self {
        let b = (k * &self.b.0 - &self.a.0, k * &self.b.1 - &self.a.1);
        Self {
            slope: self.slope.clone(),
            a: self.b.clone(),
            b,
        }
    }

    pub fn inverse_with(&self, k: &BigInt) -> Self {
        let a = (k * &self.a.0 - &self.b.0, k * &self.a.1 - &self.b.1);
        Self {
            slope: self.slope.clone(),
            a,
            b: self.a.clone(),
        }
    }

    pub fn swap(&self) -> Self {
        Self {
            slope: self.slope.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

/// A point `(a, b)` of the Farey triangle `a, b ∈ (0, 1]`, `a + b > 1`.
#[derive(Clone, Debug)]
pub enum FareyPoint {
    Rational(RationalPoint),
    Slope(SlopePoint),
}

impl FareyPoint {
    pub fn rational(a: BigRational, b: BigRational) -> Result<Self> {
        RationalPoint::new(a, b).map(FareyPoint::Rational)
    }

    /// `(1/s, 1)` for a slope `s = [c_0; c_1, …]` with `c_0 ≥ 1`.
    ///
    /// A finite expansion gives the exact rational point.
    pub fn from_slope(cf: ContinuedFraction) -> Result<Self> {
        match cf.coeff(0) {
            Some(c0) if c0 >= BigInt::one() => {}
            _ => return Err(Error::SlopeOutOfRange),
        }
        if let Some(s) = cf.value() {
            return Self::rational(s.recip(), BigRational::one());
        }
        let slope = Slope::new(cf)?;
        let pt = SlopePoint::new(
            slope,
            (BigInt::from(-1), BigInt::zero()),
            (BigInt::zero(), BigInt::one()),
        )?;
        Ok(FareyPoint::Slope(pt))
    }

    /// Same as [`FareyPoint::from_slope`] with a custom precision budget.
    pub fn from_slope_with_bits(cf: ContinuedFraction, max_bits: u64) -> Result<Self> {
        match Self::from_slope(cf)? {
            FareyPoint::Slope(pt) => {
                let slope = pt.slope.clone().with_max_bits(max_bits);
                Ok(FareyPoint::Slope(SlopePoint { slope, ..pt }))
            }
            r => Ok(r),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FareyPoint::Rational(_))
    }

    pub fn a_value(&self) -> XValue {
        match self {
            FareyPoint::Rational(r) => XValue::Exact(r.a()),
            FareyPoint::Slope(pt) => XValue::Linear {
                p: pt.a.0.clone(),
                q: pt.a.1.clone(),
                slope: pt.slope.clone(),
            },
        }
    }

    pub fn b_value(&self) -> XValue {
        self.swap().a_value()
    }

    pub fn a_interval(&self) -> Interval {
        self.a_value().interval()
    }

    pub fn b_interval(&self) -> Interval {
        self.b_value().interval()
    }

    /// `k(a, b) = ⌊(1 + a)/b⌋`.
    pub fn k(&self) -> Result<BigInt> {
        match self {
            FareyPoint::Rational(r) => Ok(r.k()),
            FareyPoint::Slope(pt) => pt.k(),
        }
    }

    /// `k(b, a)`, which equals `k(T⁻¹(a, b))`.
    pub fn k_transpose(&self) -> Result<BigInt> {
        match self {
            FareyPoint::Rational(r) => Ok(r.k_transpose()),
            FareyPoint::Slope(pt) => pt.k_transpose(),
        }
    }

    pub fn step(&self) -> Result<Self> {
        Ok(match self {
            FareyPoint::Rational(r) => FareyPoint::Rational(r.step()),
            FareyPoint::Slope(pt) => FareyPoint::Slope(pt.step_with(&pt.k()?)),
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(match self {
            FareyPoint::Rational(r) => FareyPoint::Rational(r.inverse()),
            FareyPoint::Slope(pt) => FareyPoint::Slope(pt.inverse_with(&pt.k_transpose()?)),
        })
    }

    /// The reflection `(a, b) ↦ (b, a)`, which conjugates the map to its inverse.
    pub fn swap(&self) -> Self {
        match self {
            FareyPoint::Rational(r) => FareyPoint::Rational(r.swap()),
            FareyPoint::Slope(pt) => FareyPoint::Slope(pt.swap()),
        }
    }

    /// `q·b - p·a`, the value carried by the integer pair `(p, q)`.
    pub fn value_of_pair(&self, p: &BigInt, q: &BigInt) -> XValue {
        match self {
            FareyPoint::Rational(r) => XValue::Exact(
                BigRational::from_integer(q.clone()) * r.b() - BigRational::from_integer(p.clone()) * r.a(),
            ),
            FareyPoint::Slope(pt) => XValue::Linear {
                p: q * &pt.b.0 - p * &pt.a.0,
                q: q * &pt.b.1 - p * &pt.a.1,
                slope: pt.slope.clone(),
            },
        }
    }

    /// The slope of a point over a slope.
    pub fn slope(&self) -> Option<&Slope> {
        match self {
            FareyPoint::Rational(_) => None,
            FareyPoint::Slope(pt) => Some(&pt.slope),
        }
    }

    /// Exact equality for rational points; identical pairs over the same slope otherwise.
    pub fn same_as(&self, other: &FareyPoint) -> bool {
        match (self, other) {
            (FareyPoint::Rational(x), FareyPoint::Rational(y)) => x == y,
            (FareyPoint::Slope(x), FareyPoint::Slope(y)) => {
                x.slope.same(&y.slope) && x.a == y.a && x.b == y.b
            }
            _ => false,
        }
    }
}

impl fmt::Display for FareyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FareyPoint::Rational(r) => write!(f, "({}, {})", r.a(), r.b()),
            FareyPoint::Slope(pt) => write!(
                f,
                "({} - {}/s, {} - {}/s) with s = {}",
                pt.a.1,
                pt.a.0,
                pt.b.1,
                pt.b.0,
                pt.slope.continued_fraction()
            ),
        }
    }
}
