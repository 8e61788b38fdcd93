//! Continued fractions, convergents and even/odd Diophantine exponents.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bcz::FareyPoint;
use crate::numerics::{ln_bigint, BigInt, BigRational};
use crate::{Error, Result};

/// Coefficient rule `c_n = rule(n, c_0..c_{n-1}, q'_0..q'_{n-1})`.
pub type Rule = Arc<dyn Fn(usize, &[BigInt], &[BigInt]) -> BigInt + Send + Sync>;

enum Source {
    Finite(Vec<BigInt>),
    /// `head` holds `c_0` and any non-repeating prefix.
    Periodic {
        head: Vec<BigInt>,
        period: Vec<BigInt>,
    },
    Rule {
        rule: Rule,
        label: String,
    },
}

#[derive(Default)]
struct Cache {
    coeffs: Vec<BigInt>,
    ps: Vec<BigInt>,
    qs: Vec<BigInt>,
}

/// A continued fraction `[c_0; c_1, c_2, …]`, finite or infinite.
///
/// Clones share one coefficient and convergent cache, so expensive
/// programmatic rules are evaluated once. All reads are deterministic.
#[derive(Clone)]
pub struct ContinuedFraction {
    source: Arc<Source>,
    cache: Arc<Mutex<Cache>>,
}

/// The convergent `p'_k / q'_k = [c_0; c_1, …, c_k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub k: usize,
    pub p: BigInt,
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

impl ContinuedFraction {
    fn from_source(source: Source) -> Self {
        Self {
            source: Arc::new(source),
            cache: Arc::default(),
        }
    }

    pub fn finite(coeffs: Vec<BigInt>) -> Result<Self> {
        check_coeffs(&coeffs, 0)?;
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("empty continued fraction".into()));
        }
        Ok(Self::from_source(Source::Finite(coeffs)))
    }

    /// `head` starts with `c_0`; `period` repeats forever after it.
    pub fn periodic(head: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if head.is_empty() || period.is_empty() {
            return Err(Error::InvalidInput("periodic fraction needs c0 and a period".into()));
        }
        check_coeffs(&head, 0)?;
        check_coeffs(&period, 1)?;
        Ok(Self::from_source(Source::Periodic { head, period }))
    }

    /// Infinite fraction driven by a coefficient rule. Rule outputs below 1
    /// at `n ≥ 1` are clamped to 1.
    pub fn from_rule(label: impl Into<String>, rule: Rule) -> Self {
        Self::from_source(Source::Rule {
            rule,
            label: label.into(),
        })
    }

    /// `[1; 1, 1, …]`, the golden ratio.
    pub fn golden() -> Self {
        Self::periodic(vec![BigInt::one()], vec![BigInt::one()]).unwrap()
    }

    /// Slope with prescribed even and odd exponents.
    ///
    /// `c_0 = 1`, `c_{2n} = max(1, round(q'_{2n-1}^{e⁺-2}))` and
    /// `c_{2n+1} = max(1, round(q'_{2n}^{e⁻-2}))`, ties rounding up.
    pub fn construct(e_plus: f64, e_minus: f64) -> Result<Self> {
        for e in [e_plus, e_minus] {
            if !e.is_finite() || e < 2.0 {
                return Err(Error::InvalidInput(format!("exponent target {e} must be finite and >= 2")));
            }
        }
        let rule: Rule = Arc::new(move |n, _c, qs| {
            if n == 0 {
                return BigInt::one();
            }
            let e = if n % 2 == 0 { e_plus } else { e_minus };
            rounded_power(&qs[n - 1], e - 2.0).max(BigInt::one())
        });
        Ok(Self::from_rule(format!("construct({e_plus},{e_minus})"), rule))
    }

    pub fn is_finite(&self) -> bool {
        matches!(*self.source, Source::Finite(_))
    }

    /// Number of coefficients of a finite fraction.
    pub fn len(&self) -> Option<usize> {
        match &*self.source {
            Source::Finite(c) => Some(c.len()),
            _ => None,
        }
    }

    /// Exact value of a finite fraction.
    pub fn value(&self) -> Option<BigRational> {
        let n = self.len()?;
        self.convergent(n - 1).map(|c| c.value())
    }

    fn extend(&self, cache: &mut Cache, n: usize) -> bool {
        while cache.coeffs.len() <= n {
            let i = cache.coeffs.len();
            let c = match &*self.source {
                Source::Finite(c) => match c.get(i) {
                    Some(c) => c.clone(),
                    None => return false,
                },
                Source::Periodic { head, period } => match head.get(i) {
                    Some(c) => c.clone(),
                    None => period[(i - head.len()) % period.len()].clone(),
                },
                Source::Rule { rule, .. } => {
                    let c = rule(i, &cache.coeffs, &cache.qs);
                    if i > 0 && c < BigInt::one() {
                        BigInt::one()
                    } else {
                        c
                    }
                }
            };
            let (p, q) = match i {
                0 => (c.clone(), BigInt::one()),
                1 => (&c * &cache.ps[0] + 1, c.clone()),
                _ => (
                    &c * &cache.ps[i - 1] + &cache.ps[i - 2],
                    &c * &cache.qs[i - 1] + &cache.qs[i - 2],
                ),
            };
            cache.coeffs.push(c);
            cache.ps.push(p);
            cache.qs.push(q);
        }
        true
    }

    /// `c_n`, or `None` past the end of a finite fraction.
    pub fn coeff(&self, n: usize) -> Option<BigInt> {
        let mut cache = self.cache.lock().unwrap();
        self.extend(&mut cache, n).then(|| cache.coeffs[n].clone())
    }

    pub fn convergent(&self, k: usize) -> Option<Convergent> {
        let mut cache = self.cache.lock().unwrap();
        self.extend(&mut cache, k).then(|| Convergent {
            k,
            p: cache.ps[k].clone(),
            q: cache.qs[k].clone(),
        })
    }

    /// `c_0..=c_n`.
    pub fn coeffs(&self, n: usize) -> Result<Vec<BigInt>> {
        let mut cache = self.cache.lock().unwrap();
        if !self.extend(&mut cache, n) {
            return Err(Error::StreamExhausted {
                terms: cache.coeffs.len(),
            });
        }
        Ok(cache.coeffs[..=n].to_vec())
    }

    /// Convergent `k`, with the signed convention `p'_{-1}/q'_{-1} = 1/0`
    /// and `p'_{-2}/q'_{-2} = 0/1` for negative indices.
    pub fn pair(&self, k: isize) -> Result<(BigInt, BigInt)> {
        match k {
            -2 => Ok((BigInt::zero(), BigInt::one())),
            -1 => Ok((BigInt::one(), BigInt::zero())),
            k if k >= 0 => self
                .convergent(k as usize)
                .map(|c| (c.p, c.q))
                .ok_or(Error::StreamExhausted { terms: k as usize }),
            _ => Err(Error::InvalidInput(format!("no convergent at index {k}"))),
        }
    }
}

fn check_coeffs(c: &[BigInt], first_index: usize) -> Result<()> {
    for (i, x) in c.iter().enumerate() {
        let n = i + first_index;
        if x.is_negative() || (n >= 1 && x.is_zero()) {
            return Err(Error::InvalidInput(format!("coefficient c_{n} = {x} out of range")));
        }
    }
    Ok(())
}

/// `round(q^x)` with ties up; exact for integral `x`.
fn rounded_power(q: &BigInt, x: f64) -> BigInt {
    if x == 0.0 || q.is_one() {
        return BigInt::one();
    }
    if x.fract() == 0.0 && x <= u32::MAX as f64 {
        return q.pow(x as u32);
    }
    let log2 = x * ln_bigint(q) / std::f64::consts::LN_2;
    if log2 < 52.0 {
        return BigInt::from((log2.exp2() + 0.5).floor() as u64);
    }
    let whole = log2.floor();
    let mantissa = ((log2 - whole).exp2() * (1u64 << 52) as f64) as u64;
    BigInt::from(mantissa) << (whole as u64 - 52)
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match &*self.source {
            Source::Finite(c) if c.len() == 1 => write!(f, "[{}]", c[0]),
            Source::Finite(c) => write!(f, "[{};{}]", c[0], join(&c[1..])),
            Source::Periodic { head, period } => {
                write!(f, "[{};", head[0])?;
                if head.len() > 1 {
                    write!(f, "{},", join(&head[1..]))?;
                }
                write!(f, "({})]", join(period))
            }
            Source::Rule { label, .. } => f.write_str(label),
        }
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ContinuedFraction({self})")
    }
}

/// Parses `[c0;c1,…,ck]` (finite), `[c0;c1,…,ck,...]` (c1..ck repeat) and
/// `[c0;c1,…,(p1,…,pm)]` (explicit period).
impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("continued fraction {s:?}: {why}"));
        let body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| bad("expected [c0;c1,...]"))?;
        let num = |t: &str| t.parse::<BigInt>().map_err(|_| bad(&format!("bad coefficient {t:?}")));
        let list = |t: &str| -> Result<Vec<BigInt>> {
            t.split(',').filter(|x| !x.is_empty()).map(num).collect()
        };
        let (c0, rest) = match body.split_once(';') {
            Some((c0, rest)) => (num(c0)?, rest),
            None => return ContinuedFraction::finite(vec![num(body)?]),
        };
        if let Some((pre, per)) = rest.split_once('(') {
            let per = per.strip_suffix(')').ok_or_else(|| bad("unclosed period"))?;
            let mut head = vec![c0];
            head.extend(list(pre)?);
            return ContinuedFraction::periodic(head, list(per)?);
        }
        if let Some(pre) = rest.strip_suffix("...") {
            let period = list(pre)?;
            if period.is_empty() {
                return Err(bad("empty period"));
            }
            return ContinuedFraction::periodic(vec![c0], period);
        }
        let mut coeffs = vec![c0];
        coeffs.extend(list(rest)?);
        ContinuedFraction::finite(coeffs)
    }
}

/// `p'_0/q'_0, …, p'_K/q'_K`.
pub fn convergents(cf: &ContinuedFraction, k: usize) -> Result<Vec<Convergent>> {
    (0..=k)
        .map(|i| cf.convergent(i).ok_or(Error::StreamExhausted { terms: i }))
        .collect()
}

/// Euclidean expansion of a positive rational, with last coefficient ≥ 2
/// unless the expansion is a single term.
pub fn cf_of_rational(x: &BigRational) -> Result<ContinuedFraction> {
    if !x.is_positive() {
        return Err(Error::InvalidInput(format!("{x} is not positive")));
    }
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    let mut coeffs = Vec::new();
    while !d.is_zero() {
        let (q, r) = n.div_mod_floor(&d);
        coeffs.push(q);
        n = std::mem::replace(&mut d, r);
    }
    ContinuedFraction::finite(coeffs)
}

/// `e_n = 2 + ln c_n / ln q'_{n-1}` for `n ≤ K`, skipping `q'_{n-1} = 1`.
pub fn exponent_sequence(cf: &ContinuedFraction, k: usize) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::new();
    for n in 1..=k {
        let c = cf.coeff(n).ok_or(Error::StreamExhausted { terms: n })?;
        let q = cf.convergent(n - 1).unwrap().q;
        if q.is_one() {
            continue;
        }
        out.push((n, 2.0 + ln_bigint(&c) / ln_bigint(&q)));
    }
    Ok(out)
}

/// Finite-horizon exponent probe.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentEstimate {
    pub series: Vec<(usize, f64)>,
    /// Largest even-index `e_n` in the window, or 2 when none is defined.
    pub e_plus: f64,
    pub e_minus: f64,
    pub n_range: (usize, usize),
}

impl ExponentEstimate {
    pub fn e(&self) -> f64 {
        self.e_plus.max(self.e_minus)
    }
}

/// Maxima of `e_n` over even and odd `n` in `[tail_start, K]`.
pub fn estimate_exponents(
    cf: &ContinuedFraction,
    k: usize,
    tail_start: usize,
) -> Result<ExponentEstimate> {
    if tail_start >= k {
        return Err(Error::InvalidInput("tail_start must be below K".into()));
    }
    let series = exponent_sequence(cf, k)?;
    let max_of = |parity| {
        series
            .iter()
            .filter(|(n, _)| *n >= tail_start && n % 2 == parity)
            .map(|&(_, e)| e)
            .fold(2.0f64, f64::max)
    };
    Ok(ExponentEstimate {
        e_plus: max_of(0),
        e_minus: max_of(1),
        series,
        n_range: (tail_start, k),
    })
}

/// The point `(1/s, 1)` of slope `s = [c_0; c_1, …]`.
pub fn point_from_slope(cf: &ContinuedFraction) -> Result<FareyPoint> {
    FareyPoint::from_slope(cf.clone())
}

/// `f64` approximation of an infinite fraction from its `k`-th convergent.
pub fn approx_f64(cf: &ContinuedFraction, k: usize) -> Option<f64> {
    let c = cf.convergent(k)?;
    Some(c.p.to_f64()? / c.q.to_f64()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn pq(c: &[Convergent]) -> Vec<(i64, i64)> {
        c.iter()
            .map(|c| (c.p.to_i64().unwrap(), c.q.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn convergent_examples() {
        let g = ContinuedFraction::golden();
        assert_eq!(pq(&convergents(&g, 3).unwrap()), [(1, 1), (2, 1), (3, 2), (5, 3)]);
        let f: ContinuedFraction = "[1;2,2]".parse().unwrap();
        assert_eq!(pq(&convergents(&f, 2).unwrap()), [(1, 1), (3, 2), (7, 5)]);
        assert_eq!(pq(&convergents(&f, 0).unwrap()), [(1, 1)]);
        assert!(matches!(convergents(&f, 3), Err(Error::StreamExhausted { .. })));
    }

    #[test]
    fn rational_expansions() {
        assert_eq!(cf_of_rational(&ratio(7, 5)).unwrap().to_string(), "[1;2,2]");
        assert_eq!(cf_of_rational(&ratio(3, 1)).unwrap().to_string(), "[3]");
        assert_eq!(cf_of_rational(&ratio(1, 3)).unwrap().to_string(), "[0;3]");
        assert_eq!(cf_of_rational(&ratio(7, 5)).unwrap().value(), Some(ratio(7, 5)));
    }

    #[test]
    fn notation_round_trip() {
        for s in ["[1;2,2]", "[3]", "[1;(1)]", "[2;1,(3,4)]"] {
            let cf: ContinuedFraction = s.parse().unwrap();
            assert_eq!(cf.to_string(), s);
        }
        let g: ContinuedFraction = "[1;1,1,...]".parse().unwrap();
        assert_eq!(g.coeffs(6).unwrap(), ints(&[1; 7]));
        let s: ContinuedFraction = "[1; 2, ...]".parse().unwrap();
        assert_eq!(s.coeffs(4).unwrap(), ints(&[1, 2, 2, 2, 2]));
        let p: ContinuedFraction = "[2;1,(3,4)]".parse().unwrap();
        assert_eq!(p.coeffs(6).unwrap(), ints(&[2, 1, 3, 4, 3, 4, 3]));
        for bad in ["1;2", "[1;0]", "[1;x]", "[1;...]", "[1;(2]"] {
            assert!(bad.parse::<ContinuedFraction>().is_err(), "{bad}");
        }
    }

    #[test]
    fn constructed_coefficients() {
        let g = ContinuedFraction::construct(2.0, 2.0).unwrap();
        assert_eq!(g.coeffs(20).unwrap(), ints(&[1; 21]));
        let s = ContinuedFraction::construct(2.0, 3.0).unwrap();
        assert_eq!(s.coeffs(8).unwrap(), ints(&[1, 1, 1, 2, 1, 7, 1, 61, 1]));
        let qs: Vec<_> = convergents(&s, 8).unwrap().into_iter().map(|c| c.q).collect();
        assert_eq!(qs, ints(&[1, 1, 2, 5, 7, 54, 61, 3775, 3836]));
        for n in (1..=8).step_by(2) {
            assert_eq!(s.coeff(n).unwrap(), qs[n - 1]);
        }
        let t = ContinuedFraction::construct(4.0, 2.0).unwrap();
        let qs: Vec<_> = convergents(&t, 8).unwrap().into_iter().map(|c| c.q).collect();
        for n in (2..=8).step_by(2) {
            assert_eq!(t.coeff(n).unwrap(), qs[n - 1].pow(2u32));
            assert_eq!(t.coeff(n - 1).unwrap(), BigInt::one());
        }
        assert!(ContinuedFraction::construct(1.5, 2.0).is_err());
        assert!(ContinuedFraction::construct(f64::INFINITY, 2.0).is_err());
    }

    #[test]
    fn fractional_targets_round_half_up() {
        assert_eq!(rounded_power(&BigInt::from(4), 0.5), BigInt::from(2));
        assert_eq!(rounded_power(&BigInt::from(2), 0.5), BigInt::from(1));
        assert_eq!(rounded_power(&BigInt::from(10), 1.5), BigInt::from(32));
        let big = rounded_power(&(BigInt::one() << 200), 0.5);
        assert_eq!(big, BigInt::one() << 100);
    }

    #[test]
    fn exponent_examples() {
        let g = ContinuedFraction::golden();
        assert!(exponent_sequence(&g, 30).unwrap().iter().all(|&(_, e)| e == 2.0));
        let est = estimate_exponents(&g, 30, 5).unwrap();
        assert_eq!((est.e_plus, est.e_minus), (2.0, 2.0));

        let s = ContinuedFraction::construct(2.0, 3.0).unwrap();
        for (n, e) in exponent_sequence(&s, 24).unwrap() {
            let want = if n % 2 == 1 { 3.0 } else { 2.0 };
            assert!((e - want).abs() < 1e-12, "e_{n} = {e}");
        }
        let est = estimate_exponents(&s, 40, 10).unwrap();
        assert!((est.e_minus - 3.0).abs() < 1e-6);
        assert_eq!(est.e_plus, 2.0);

        let t: ContinuedFraction = "[1;2,...]".parse().unwrap();
        let seq = exponent_sequence(&t, 40).unwrap();
        assert!(seq.windows(2).all(|w| w[1].1 < w[0].1));
        let est = estimate_exponents(&t, 40, 20).unwrap();
        for e in [est.e_plus, est.e_minus] {
            assert!(e > 2.0 && e < 2.1);
        }
    }

    #[test]
    fn slopes_to_points() {
        assert!(matches!(
            point_from_slope(&"[0;2,...]".parse().unwrap()),
            Err(Error::SlopeOutOfRange)
        ));
        let p = point_from_slope(&"[2;1,3,...]".parse().unwrap()).unwrap();
        let iv = p.a_interval();
        assert!(iv.lo() >= &ratio(1, 3) && iv.hi() <= &ratio(1, 2));
        let a = p.a_value().to_f64();
        assert!(a > 1.0 / 3.0 && a < 0.5);
        let g = point_from_slope(&ContinuedFraction::golden()).unwrap();
        assert!((g.a_value().to_f64() - 0.6180339887498949).abs() < 1e-15);
        assert_eq!(g.b_value().exact(), None);
        assert!(g.b_interval().is_point());
    }
}
