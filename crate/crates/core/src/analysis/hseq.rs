use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bcz::XValue;
use crate::numerics::{BigInt, BigRational};
use crate::{Error, Precondition, Result};

/// A sequence of positive values, exact or over one slope.
#[derive(Clone, Debug)]
pub struct PositiveSequence {
    terms: Vec<XValue>,
}

impl PositiveSequence {
    pub fn new(terms: Vec<XValue>) -> Result<Self> {
        if terms.len() < 3 {
            return Err(Error::PreconditionFailed(Precondition::Length));
        }
        let zero = XValue::Exact(BigRational::zero());
        for t in &terms {
            if t.cmp(&zero)? != Ordering::Greater {
                return Err(Error::InvalidInput("terms must be positive".into()));
            }
        }
        Ok(Self { terms })
    }

    pub fn from_rationals(terms: Vec<BigRational>) -> Result<Self> {
        Self::new(terms.into_iter().map(XValue::Exact).collect())
    }

    pub fn terms(&self) -> &[XValue] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact terms, when every term is exact.
    pub fn rationals(&self) -> Option<Vec<BigRational>> {
        self.terms.iter().map(|t| t.exact().cloned()).collect()
    }
}

/// `(s_{i-1} + s_{i+1})/s_i` when it is rational; `None` for an irrational quotient.
fn quotient(prev: &XValue, cur: &XValue, next: &XValue) -> Result<Option<BigRational>> {
    match (prev, cur, next) {
        (XValue::Exact(a), XValue::Exact(b), XValue::Exact(c)) => Ok(Some((a + c) / b)),
        _ => {
            let sum = prev.combine(&BigInt::one(), next, &BigInt::one())?;
            let ((sp, sq), (cp, cq)) = match (sum.pair(), cur.pair()) {
                (Some(x), Some(y)) => (x, y),
                _ => return Err(Error::InvalidInput("mixed exact and slope terms".into())),
            };
            // the pair of a positive value is never (0, 0)
            let k = if !cq.is_zero() {
                let (k, r) = sq.div_rem(cq);
                if !r.is_zero() {
                    return Ok(None);
                }
                k
            } else {
                let (k, r) = sp.div_rem(cp);
                if !r.is_zero() {
                    return Ok(None);
                }
                k
            };
            Ok((&k * cp == *sp && &k * cq == *sq).then(|| BigRational::from_integer(k)))
        }
    }
}

fn integral_quotient(prev: &XValue, cur: &XValue, next: &XValue) -> Result<Option<BigInt>> {
    Ok(quotient(prev, cur, next)?.filter(|q| q.is_integer()).map(|q| q.to_integer()))
}

/// `h(s_1, …, s_n) = Σ_{i=2}^{n-1} ((s_{i-1} + s_{i+1})/s_i - 3)`.
///
/// Exact whenever every quotient is rational; a certified sequence whose
/// quotients are not integers has an irrational `h` and is rejected.
pub fn h(seq: &PositiveSequence) -> Result<BigRational> {
    let t = &seq.terms;
    let mut acc = BigRational::zero();
    for i in 1..t.len() - 1 {
        let q = quotient(&t[i - 1], &t[i], &t[i + 1])?
            .ok_or_else(|| Error::InvalidInput(format!("quotient at position {} is irrational", i + 1)))?;
        acc += q - BigRational::from_integer(BigInt::from(3));
    }
    Ok(acc)
}

/// `h` of an exact sequence.
pub fn h_rational(terms: &[BigRational]) -> Result<BigRational> {
    h(&PositiveSequence::from_rationals(terms.to_vec())?)
}

fn check_divisibility(t: &[XValue]) -> Result<()> {
    for i in 1..t.len() - 1 {
        match integral_quotient(&t[i - 1], &t[i], &t[i + 1])? {
            Some(q) if q >= BigInt::one() => {}
            _ => return Err(Error::PreconditionFailed(Precondition::Divisibility)),
        }
    }
    Ok(())
}

fn unit_quotient(t: &[XValue], r: usize) -> bool {
    t[r - 1]
        .combine(&BigInt::one(), &t[r + 1], &BigInt::one())
        .map(|s| s.same_value(&t[r]))
        .unwrap_or(false)
}

/// Removes a largest term at the smallest eligible 1-indexed position
/// `r ∈ [3, n - 2]`, returning the shorter sequence and `r`.
///
/// A largest term is eligible only when its quotient is 1, since a maximal
/// term flanked by two equal terms has quotient 2 and its removal shifts `h`.
pub fn eliminate_max(seq: &PositiveSequence) -> Result<(PositiveSequence, usize)> {
    let t = &seq.terms;
    let n = t.len();
    if n < 5 {
        return Err(Error::PreconditionFailed(Precondition::Length));
    }
    check_divisibility(t)?;
    let mut max = 0;
    for i in 1..n {
        if t[i].cmp(&t[max])? == Ordering::Greater {
            max = i;
        }
    }
    // 0-based r in [2, n - 3]
    for r in 2..=n - 3 {
        if t[r].cmp(&t[max])? == Ordering::Equal && unit_quotient(t, r) {
            let mut terms = t.clone();
            terms.remove(r);
            return Ok((PositiveSequence { terms }, r + 1));
        }
    }
    Err(Error::PreconditionFailed(Precondition::MaxPosition))
}

/// Result of [`reduce_fully`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub sequence: PositiveSequence,
    /// 0-based positions of the surviving terms in the input.
    pub kept: Vec<usize>,
}

/// Eliminates interior terms with quotient 1 (each a local maximum) until none
/// is left at a position in `[3, n - 2]`; `h` is unchanged at every step.
pub fn reduce_fully(seq: &PositiveSequence) -> Result<Reduction> {
    let t = &seq.terms;
    let n = t.len();
    if n < 5 {
        return Err(Error::PreconditionFailed(Precondition::Length));
    }
    check_divisibility(t)?;
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    for idx in 0..n {
        stack.push(idx);
        // the candidate's right neighbour must not be the final term
        while idx < n - 1 && stack.len() >= 4 {
            let l = stack.len();
            let (a, b, c) = (&t[stack[l - 3]], &t[stack[l - 2]], &t[stack[l - 1]]);
            let is_unit = a
                .combine(&BigInt::one(), c, &BigInt::one())
                .map(|s| s.same_value(b))
                .unwrap_or(false);
            if !is_unit {
                break;
            }
            stack.remove(l - 2);
        }
    }
    let terms = stack.iter().map(|&i| t[i].clone()).collect();
    Ok(Reduction {
        sequence: PositiveSequence { terms },
        kept: stack,
    })
}

/// Checks `f_s > f_n > f_{t-1}` for `n ∈ [s+1, t-2]` on an excursion `a_s, …, a_t`.
///
/// `ks` holds `k_{s+1}, …, k_{t-1}`; partial sums are taken relative to `f_s`.
pub fn check_monotonicity(a: &[XValue], ks: &[BigInt]) -> Result<bool> {
    let m = a.len();
    if m < 4 {
        return Err(Error::InvalidInput("excursion needs at least 4 points".into()));
    }
    if ks.len() != m - 2 {
        return Err(Error::InvalidInput(format!("expected {} itinerary values, got {}", m - 2, ks.len())));
    }
    let (first, last) = (&a[0], &a[m - 1]);
    for x in &a[1..m - 1] {
        if x.cmp(first)? != Ordering::Greater || x.cmp(last)? != Ordering::Greater {
            return Err(Error::NotAnExcursion);
        }
    }
    for j in 1..m - 1 {
        let next = a[j].combine(&ks[j - 1], &a[j - 1], &-BigInt::one())?;
        if !next.same_value(&a[j + 1]) {
            return Err(Error::InvalidInput(format!("itinerary does not match the values at {j}")));
        }
    }
    let mut g = BigInt::zero();
    let mut partial = Vec::with_capacity(m - 2);
    for k in ks {
        g += k - 3;
        partial.push(g.clone());
    }
    let end = &partial[m - 3];
    Ok(partial[..m - 3]
        .iter()
        .all(|x| x < &BigInt::zero() && x > end))
}
