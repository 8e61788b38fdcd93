use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{floor, AffineForm, BigInt, BigRational, Interval};
use crate::contfrac::ContinuedFraction;
use crate::{Error, Result};

/// Default precision budget for certified floors and comparisons, in bits of
/// the convergent denominator.
pub const DEFAULT_MAX_BITS: u64 = 4096;

/// An irrational real known through its continued fraction.
///
/// The value always lies between the two most recent convergents
/// `p'_{k-1}/q'_{k-1}` and `p'_k/q'_k`, so the enclosing interval has width
/// `1/(q'_{k-1} q'_k)`. Refinement consumes one coefficient at a time.
#[derive(Clone, Debug)]
pub struct CertifiedReal {
    cf: ContinuedFraction,
    p_prev: BigInt,
    q_prev: BigInt,
    p: BigInt,
    q: BigInt,
    k: usize,
}

impl CertifiedReal {
    /// Starts from the bracket formed by convergents 0 and 1.
    pub fn new(cf: ContinuedFraction) -> Result<Self> {
        let c0 = cf.coeff(0).ok_or(Error::StreamExhausted { terms: 0 })?;
        let c1 = cf.coeff(1).ok_or(Error::StreamExhausted { terms: 1 })?;
        let p = &c1 * &c0 + 1;
        Ok(Self {
            p_prev: c0,
            q_prev: BigInt::one(),
            p,
            q: c1,
            k: 1,
            cf,
        })
    }

    pub fn continued_fraction(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn terms_consumed(&self) -> usize {
        self.k + 1
    }

    /// Bits of the current convergent denominator.
    pub fn precision_bits(&self) -> u64 {
        self.q.bits()
    }

    /// The two bracketing convergents as `(p, q)` pairs, older one first.
    pub fn bracket(&self) -> ((&BigInt, &BigInt), (&BigInt, &BigInt)) {
        ((&self.p_prev, &self.q_prev), (&self.p, &self.q))
    }

    pub fn interval(&self) -> Interval {
        Interval::hull(
            BigRational::new(self.p_prev.clone(), self.q_prev.clone()),
            BigRational::new(self.p.clone(), self.q.clone()),
        )
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(BigInt::one(), &self.q_prev * &self.q)
    }

    /// Consumes one more coefficient.
    pub fn refine_step(&mut self) -> Result<()> {
        let c = self
            .cf
            .coeff(self.k + 1)
            .ok_or(Error::StreamExhausted { terms: self.k + 1 })?;
        let p = &c * &self.p + &self.p_prev;
        let q = &c * &self.q + &self.q_prev;
        self.p_prev = std::mem::replace(&mut self.p, p);
        self.q_prev = std::mem::replace(&mut self.q, q);
        self.k += 1;
        Ok(())
    }

    /// Shrinks the enclosing interval to width at most `eps`.
    pub fn refine(&mut self, eps: &BigRational) -> Result<()> {
        if !eps.is_positive() {
            return Err(Error::InvalidInput("refine needs eps > 0".into()));
        }
        while &self.width() > eps {
            self.refine_step()?;
        }
        Ok(())
    }

    fn budget_check(&self, max_bits: u64, ambiguous: fn(u64) -> Error) -> Result<()> {
        if self.q.bits() > max_bits {
            Err(ambiguous(self.q.bits()))
        } else {
            Ok(())
        }
    }

    /// Certified sign of `c0 + c1·s` with integer coefficients.
    pub fn sign_int(&mut self, c0: &BigInt, c1: &BigInt, max_bits: u64) -> Result<Ordering> {
        if c1.is_zero() {
            return Ok(c0.sign_ordering());
        }
        loop {
            let a = c0 * &self.q_prev + c1 * &self.p_prev;
            let b = c0 * &self.q + c1 * &self.p;
            if a.is_positive() && b.is_positive() {
                return Ok(Ordering::Greater);
            }
            if a.is_negative() && b.is_negative() {
                return Ok(Ordering::Less);
            }
            self.budget_check(max_bits, |bits| Error::ComparisonAmbiguous { bits })?;
            self.refine_step()?;
        }
    }

    /// Certified sign of an affine form in `s`.
    pub fn sign(&mut self, form: &AffineForm, max_bits: u64) -> Result<Ordering> {
        if form.is_constant() {
            return Ok(form.constant.sign_ordering());
        }
        loop {
            let iv = form.eval_interval(&self.interval());
            if iv.is_positive() {
                return Ok(Ordering::Greater);
            }
            if iv.is_negative() {
                return Ok(Ordering::Less);
            }
            self.budget_check(max_bits, |bits| Error::ComparisonAmbiguous { bits })?;
            self.refine_step()?;
        }
    }

    /// Certified `⌊(n0 + n1·s)/(d0 + d1·s)⌋` with integer coefficients.
    ///
    /// The ratio is a Möbius function of `s`, monotone wherever the denominator
    /// keeps its sign, so its range over the bracket is spanned by the values
    /// at the two convergents.
    pub fn floor_ratio_int(
        &mut self,
        n0: &BigInt,
        n1: &BigInt,
        d0: &BigInt,
        d1: &BigInt,
        max_bits: u64,
    ) -> Result<BigInt> {
        if n1.is_zero() && d1.is_zero() {
            if d0.is_zero() {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            return Ok(n0.div_floor(d0));
        }
        loop {
            let den_a = d0 * &self.q_prev + d1 * &self.p_prev;
            let den_b = d0 * &self.q + d1 * &self.p;
            let same_sign = (den_a.is_positive() && den_b.is_positive())
                || (den_a.is_negative() && den_b.is_negative());
            if same_sign {
                let num_a = n0 * &self.q_prev + n1 * &self.p_prev;
                let num_b = n0 * &self.q + n1 * &self.p;
                let fa = num_a.div_floor(&den_a);
                let fb = num_b.div_floor(&den_b);
                if fa == fb {
                    return Ok(fa);
                }
            }
            self.budget_check(max_bits, |bits| Error::FloorAmbiguous { bits })?;
            self.refine_step()?;
        }
    }

    /// Certified `⌊num(s)/den(s)⌋` for rational affine forms.
    pub fn floor_ratio(
        &mut self,
        num: &AffineForm,
        den: &AffineForm,
        max_bits: u64,
    ) -> Result<BigInt> {
        loop {
            let iv = self.interval();
            let d = den.eval_interval(&iv);
            if !d.contains_zero() {
                let fa = floor(&(num.eval(iv.lo()) / den.eval(iv.lo())));
                let fb = floor(&(num.eval(iv.hi()) / den.eval(iv.hi())));
                if fa == fb {
                    return Ok(fa);
                }
            }
            self.budget_check(max_bits, |bits| Error::FloorAmbiguous { bits })?;
            self.refine_step()?;
        }
    }

    /// Enclosure of `form(s)` at the current precision.
    pub fn eval_interval(&self, form: &AffineForm) -> Interval {
        form.eval_interval(&self.interval())
    }

    /// Enclosure of `(n0 + n1·s)/(d0 + d1·s)`, refining until the denominator
    /// is bounded away from zero and the relative width is below `2^-rel_bits`.
    pub fn ratio_interval_int(
        &mut self,
        n0: &BigInt,
        n1: &BigInt,
        d0: &BigInt,
        d1: &BigInt,
        rel_bits: u64,
        max_bits: u64,
    ) -> Result<Interval> {
        loop {
            let den_a = d0 * &self.q_prev + d1 * &self.p_prev;
            let den_b = d0 * &self.q + d1 * &self.p;
            let ok = (den_a.is_positive() && den_b.is_positive())
                || (den_a.is_negative() && den_b.is_negative());
            if ok {
                let num_a = n0 * &self.q_prev + n1 * &self.p_prev;
                let num_b = n0 * &self.q + n1 * &self.p;
                let iv = Interval::hull(
                    BigRational::new(num_a, den_a),
                    BigRational::new(num_b, den_b),
                );
                let scale = iv.lo().abs().max(iv.hi().abs());
                let tol = scale / BigRational::from_integer(BigInt::one() << rel_bits);
                if iv.width() <= tol {
                    return Ok(iv);
                }
            }
            self.budget_check(max_bits, |bits| Error::ComparisonAmbiguous { bits })?;
            self.refine_step()?;
        }
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl SignOrdering for BigRational {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigRational::zero())
    }
}

/// Returns a copy of `x` whose interval has width at most `eps`.
pub fn refine(x: &CertifiedReal, eps: &BigRational) -> Result<CertifiedReal> {
    let mut y = x.clone();
    y.refine(eps)?;
    Ok(y)
}

/// Certified `⌊num/den⌋` where both are affine forms in `s`.
///
/// Degenerate forms (no `s` dependence) take the exact rational path.
pub fn certified_floor(
    num: &AffineForm,
    den: &AffineForm,
    s: &mut CertifiedReal,
    max_bits: u64,
) -> Result<BigInt> {
    if num.is_constant() && den.is_constant() {
        if den.constant.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        return Ok(floor(&(&num.constant / &den.constant)));
    }
    s.floor_ratio(num, den, max_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, ratio};

    fn golden() -> CertifiedReal {
        CertifiedReal::new(ContinuedFraction::golden()).unwrap()
    }

    // φ is the positive root of x² − x − 1.
    fn brackets_phi(iv: &Interval) -> bool {
        let f = |x: &BigRational| x * x - x - int(1);
        f(iv.lo()) < int(0) && f(iv.hi()) > int(0)
    }

    #[test]
    fn refine_golden_to_one_hundredth() {
        let x = refine(&golden(), &ratio(1, 100)).unwrap();
        let iv = x.interval();
        assert!(iv.width() <= ratio(1, 100));
        assert!(brackets_phi(&iv));
        // 13/8 and 21/13 are the first bracket narrower than 1/100
        assert_eq!(iv, Interval::hull(ratio(13, 8), ratio(21, 13)));
        let tighter = refine(&x, &ratio(1, 200)).unwrap().interval();
        assert!(tighter.lo() > &ratio(161, 100) && tighter.hi() < &ratio(162, 100));
    }

    #[test]
    fn refine_with_loose_eps_is_identity() {
        let x = golden();
        let y = refine(&x, &int(10)).unwrap();
        assert_eq!(x.interval(), y.interval());
    }

    #[test]
    fn finite_cf_exhausts() {
        let cf: ContinuedFraction = "[1;2,2]".parse().unwrap();
        let x = CertifiedReal::new(cf).unwrap();
        let err = refine(&x, &ratio(1, 1000)).unwrap_err();
        assert!(matches!(err, Error::StreamExhausted { .. }));
    }

    #[test]
    fn floor_examples() {
        let mut s = golden();
        let s_form = AffineForm::new(int(0), int(1));
        let one = AffineForm::constant(int(1));
        assert_eq!(certified_floor(&s_form, &one, &mut s, DEFAULT_MAX_BITS).unwrap(), 1.into());
        let one_plus_s = AffineForm::new(int(1), int(1));
        assert_eq!(
            certified_floor(&one_plus_s, &one, &mut s, DEFAULT_MAX_BITS).unwrap(),
            2.into()
        );
        let two = AffineForm::constant(int(2));
        let two_minus_s = AffineForm::new(int(2), int(-1));
        assert_eq!(
            certified_floor(&two, &two_minus_s, &mut s, DEFAULT_MAX_BITS).unwrap(),
            5.into()
        );
        assert_eq!(certified_floor(&two, &one, &mut s, DEFAULT_MAX_BITS).unwrap(), 2.into());
    }

    #[test]
    fn mobius_floors() {
        // (2 + 2s)/(1 + s) is identically 2
        let mut s = golden();
        let f = s
            .floor_ratio_int(&2.into(), &2.into(), &1.into(), &1.into(), 64)
            .unwrap();
        assert_eq!(f, 2.into());
        // (φ − 1)/(2 − φ) = φ
        let g = s
            .floor_ratio_int(&(-1).into(), &1.into(), &2.into(), &(-1).into(), 64)
            .unwrap();
        assert_eq!(g, 1.into());
    }

    #[test]
    fn sign_of_zero_crossing_form_needs_budget() {
        // 2 − s vanishes at s = 2 but φ < 2, so the sign is certain.
        let mut s = golden();
        assert_eq!(s.sign_int(&2.into(), &(-1).into(), 64).unwrap(), Ordering::Greater);
        // sign of s − 13/8 needs a few refinements
        assert_eq!(
            s.sign(&AffineForm::new(ratio(-13, 8), int(1)), 64).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn floor_budget_exhaustion() {
        // 2s − 3 is exactly 0 at s = [1;2] = 3/2
        let cf: ContinuedFraction = "[1;2]".parse().unwrap();
        let mut s = CertifiedReal::new(cf).unwrap();
        let err = s
            .floor_ratio_int(&(-3).into(), &2.into(), &1.into(), &0.into(), 64)
            .unwrap_err();
        assert!(matches!(err, Error::StreamExhausted { .. }));
        let mut g = golden();
        let err = g
            .floor_ratio_int(&(-13).into(), &8.into(), &1.into(), &0.into(), 2)
            .unwrap_err();
        assert!(matches!(err, Error::FloorAmbiguous { .. }));
    }
}
