use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{check_monotonicity, eliminate_max, h, h_rational, reduce_fully, PositiveSequence};
use crate::bcz::{orbit_iter, Direction, FareyPoint, XValue};
use crate::contfrac::{estimate_exponents, ContinuedFraction};
use crate::excursion::{
    coprime_pair_count, coprime_pair_count_mobius, deepest_subsequence_bruteforce, deepest_subsequence_formula,
    deepest_subsequence_search, detect_excursions, first_mismatch, orbit_excursions_below, Mode,
};
use crate::lattice::first_return_check;
use crate::numerics::{ratio, BigInt, BigRational, DEFAULT_MAX_BITS};
use crate::{sample, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    FirstReturn,
    ExcursionCount,
    HElimination,
    Monotonicity,
    DeepFormula,
    Exponents,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::FirstReturn,
        Suite::ExcursionCount,
        Suite::HElimination,
        Suite::Monotonicity,
        Suite::DeepFormula,
        Suite::Exponents,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::FirstReturn => "first_return",
            Suite::ExcursionCount => "excursion_count",
            Suite::HElimination => "h_elimination",
            Suite::Monotonicity => "monotonicity",
            Suite::DeepFormula => "deep_formula",
            Suite::Exponents => "exponents",
            Suite::All => "all",
        }
    }

    fn tag(self) -> u64 {
        Suite::EACH.iter().position(|&s| s == self).unwrap_or(0) as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .copied()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub size: usize,
    pub seed: u64,
    pub pass: bool,
    pub results: Vec<SuiteResult>,
}

/// Outcome of one case: number of checks run and failure descriptions.
type Case = (usize, Vec<String>);

fn case_rng(seed: u64, suite: Suite, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.tag() * (1 << 32) + i as u64);
    rng
}

fn fail(out: &mut Vec<String>, what: String) {
    out.push(what);
}

fn err_case(label: String, e: Error) -> Case {
    (1, vec![format!("{label}: {e}")])
}

/// `a_0, …, a_P` over one period of `(1/n, 1)` with `k_1, …, k_P`.
pub fn farey_window(n: u64) -> Result<(Vec<XValue>, Vec<BigInt>)> {
    let pt = FareyPoint::rational(ratio(1, n as i64), BigRational::one())?;
    let period = crate::bcz::periodic_orbit(n)?.period as usize;
    orbit_window(&pt, period)
}

/// `a_0, …, a_N` and `k_1, …, k_N` of a forward orbit.
pub fn orbit_window(pt: &FareyPoint, n_steps: usize) -> Result<(Vec<XValue>, Vec<BigInt>)> {
    let mut a = vec![pt.a_value()];
    let mut k = Vec::with_capacity(n_steps);
    for st in orbit_iter(pt, n_steps, Direction::Forward) {
        let st = st?;
        a.push(st.a);
        k.push(st.k);
    }
    Ok((a, k))
}

fn first_return_case(seed: u64, i: usize) -> Case {
    let mut rng = case_rng(seed, Suite::FirstReturn, i);
    let pt = sample::rational_point(&mut rng, 500);
    match first_return_check(&pt) {
        Ok(true) => (1, vec![]),
        Ok(false) => (1, vec![format!("lattice mismatch at ({}, {})", pt.a(), pt.b())]),
        Err(e) => err_case(format!("({}, {})", pt.a(), pt.b()), e),
    }
}

fn excursion_count_order(n: u64) -> Result<Case> {
    let (a, _) = farey_window(n)?;
    let mut checks = 0;
    let mut failures = Vec::new();
    for e in detect_excursions(&a, Mode::All)? {
        checks += 1;
        let count = coprime_pair_count(&e.a_s, &e.a_t)?;
        if e.len() as u64 - 1 != count {
            fail(&mut failures, format!("order {n}: excursion ({}, {}) has length {} but {count} pairs", e.s, e.t, e.len()));
        }
    }
    Ok((checks, failures))
}

fn mobius_case(seed: u64, i: usize) -> Case {
    let mut rng = case_rng(seed, Suite::ExcursionCount, i);
    let x = XValue::Exact(sample::unit_rational(&mut rng, 120));
    let y = XValue::Exact(sample::unit_rational(&mut rng, 120));
    match (coprime_pair_count(&x, &y), coprime_pair_count_mobius(&x, &y)) {
        (Ok(b), Ok(m)) if b == m => (1, vec![]),
        (Ok(b), Ok(m)) => (1, vec![format!("({x:?}, {y:?}): direct {b}, Möbius {m}")]),
        (Err(e), _) | (_, Err(e)) => err_case("coprime count".into(), e),
    }
}

fn h_case(seed: u64, i: usize) -> Case {
    let mut rng = case_rng(seed, Suite::HElimination, i);
    let pt = sample::rational_point(&mut rng, 60);
    let mut run = || -> Result<Case> {
        let period = crate::bcz::period_of_rational(&pt)?.1 as usize;
        let fp = FareyPoint::Rational(pt.clone());
        let (a, _) = orbit_window(&fp, period + 1)?;
        let exact: Vec<BigRational> = a.iter().map(|x| x.exact().cloned().expect("rational orbit")).collect();
        let mut checks = 0;
        let mut failures = Vec::new();
        // f_n = h(a_0, …, a_{n+1})
        for (n, st) in orbit_iter(&fp, period, Direction::Forward).enumerate() {
            let f = st?.f;
            if n % 7 == 0 || n + 1 == period {
                checks += 1;
                let hv = h_rational(&exact[..n + 3])?;
                if hv != BigRational::from_integer(f.clone()) {
                    fail(&mut failures, format!("f_{} = {f} but h = {hv}", n + 1));
                }
            }
        }
        if exact.len() < 5 {
            return Ok((checks, failures));
        }
        let len = rng.gen_range(5..=exact.len().min(40));
        let start = rng.gen_range(0..=exact.len() - len);
        let seq = PositiveSequence::from_rationals(exact[start..start + len].to_vec())?;
        let before = h(&seq)?;
        let mut cur = seq.clone();
        while let Ok((next, r)) = eliminate_max(&cur) {
            checks += 1;
            let after = h(&next)?;
            if after != before {
                fail(&mut failures, format!("eliminating position {r} moved h from {before} to {after}"));
            }
            cur = next;
        }
        checks += 1;
        let red = reduce_fully(&seq)?;
        if h(&red.sequence)? != before {
            fail(&mut failures, "reduce_fully moved h".into());
        }
        Ok((checks, failures))
    };
    run().unwrap_or_else(|e| err_case(format!("({}, {})", pt.a(), pt.b()), e))
}

fn monotone_window(a: &[XValue], k: &[BigInt], s: usize, t: usize) -> Result<bool> {
    check_monotonicity(&a[s..=t], &k[s..t - 1])
}

fn monotonicity_order(n: u64) -> Result<Case> {
    let (a, k) = farey_window(n)?;
    let mut checks = 0;
    let mut failures = Vec::new();
    for e in detect_excursions(&a, Mode::All)? {
        if e.t - e.s + 1 < 4 {
            continue;
        }
        checks += 1;
        if !monotone_window(&a, &k, e.s, e.t)? {
            fail(&mut failures, format!("order {n}: excursion ({}, {})", e.s, e.t));
        }
    }
    Ok((checks, failures))
}

fn monotonicity_slope_case(seed: u64, i: usize) -> Case {
    let mut rng = case_rng(seed, Suite::Monotonicity, i);
    let pt = sample::slope_point(&mut rng, 6);
    let mut run = || -> Result<Case> {
        let steps = 3000;
        let (a, k) = orbit_window(&pt, steps)?;
        let th = ratio(1, rng.gen_range(5..=40));
        let mut checks = 0;
        let mut failures = Vec::new();
        for e in orbit_excursions_below(&pt, steps, &th)? {
            let (s, t) = (e.excursion.s, e.excursion.t);
            if t - s + 1 < 4 {
                continue;
            }
            checks += 1;
            if !monotone_window(&a, &k, s, t)? {
                fail(&mut failures, format!("slope excursion ({s}, {t})"));
            }
        }
        Ok((checks, failures))
    };
    run().unwrap_or_else(|e| err_case("slope orbit".into(), e))
}

fn deep_case(cf: ContinuedFraction, count: usize, steps: usize) -> Case {
    let run = || -> Result<Case> {
        let pt = FareyPoint::from_slope(cf.clone())?;
        let brute = deepest_subsequence_bruteforce(&pt, steps)?;
        let n = count.min(brute.len());
        let formula = deepest_subsequence_formula(&cf, &pt, count, DEFAULT_MAX_BITS)?;
        let search = deepest_subsequence_search(&pt, count, 1 << 24)?;
        let mut failures = Vec::new();
        if let Some(i) = first_mismatch(&brute[..n], &formula[..n]) {
            fail(&mut failures, format!("{cf}: formula differs from the orbit at deep index {i}"));
        }
        if let Some(i) = first_mismatch(&formula, &search) {
            fail(&mut failures, format!("{cf}: lattice search differs at deep index {i}"));
        }
        Ok((3, failures))
    };
    run().unwrap_or_else(|e| err_case(format!("{cf}"), e))
}

const EXPONENT_TARGETS: [f64; 6] = [2.0, 2.5, 3.0, 3.5, 4.0, 5.0];

fn exponent_case(seed: u64, i: usize) -> Case {
    let mut rng = case_rng(seed, Suite::Exponents, i);
    let ep = EXPONENT_TARGETS[rng.gen_range(0..EXPONENT_TARGETS.len())];
    let em = EXPONENT_TARGETS[rng.gen_range(0..EXPONENT_TARGETS.len())];
    let run = || -> Result<Case> {
        let cf = ContinuedFraction::construct(ep, em)?;
        let k = exponent_horizon(&cf, DEFAULT_MAX_BITS, 16)?;
        let est = estimate_exponents(&cf, k, k / 2)?;
        let mut failures = Vec::new();
        for (what, got, want) in [("e+", est.e_plus, ep), ("e-", est.e_minus, em)] {
            if (got - want).abs() > 0.1 {
                fail(&mut failures, format!("targets ({ep}, {em}): {what} estimated {got:.4}"));
            }
        }
        Ok((2, failures))
    };
    run().unwrap_or_else(|e| err_case(format!("targets ({ep}, {em})"), e))
}

/// Largest `K ≤ max_k` whose convergent denominators `q'_0, …, q'_{K-1}` fit in `max_bits`.
pub fn exponent_horizon(cf: &ContinuedFraction, max_bits: u64, max_k: usize) -> Result<usize> {
    let mut k = 0;
    while k < max_k {
        let c = cf.convergent(k).ok_or(Error::StreamExhausted { terms: k })?;
        if c.q.bits() > max_bits {
            break;
        }
        k += 1;
    }
    if k < 2 {
        return Err(Error::BudgetExceeded { budget: max_bits });
    }
    Ok(k)
}

fn collect(suite: Suite, cases: Vec<Case>) -> SuiteResult {
    let n = cases.len();
    let checks = cases.iter().map(|c| c.0).sum();
    let failures: Vec<String> = cases.into_iter().flat_map(|c| c.1).collect();
    SuiteResult {
        suite: suite.to_string(),
        cases: n,
        checks,
        pass: failures.is_empty(),
        failures,
    }
}

fn per_order(size: usize, f: fn(u64) -> Result<Case>) -> Vec<Case> {
    (1..=size as u64)
        .into_par_iter()
        .map(|n| f(n).unwrap_or_else(|e| err_case(format!("order {n}"), e)))
        .collect()
}

fn run_one(suite: Suite, size: usize, seed: u64) -> SuiteResult {
    let seeded = |f: fn(u64, usize) -> Case| -> Vec<Case> { (0..size).into_par_iter().map(|i| f(seed, i)).collect() };
    let cases = match suite {
        Suite::FirstReturn => seeded(first_return_case),
        Suite::ExcursionCount => {
            let mut c = per_order(size, excursion_count_order);
            c.extend(seeded(mobius_case));
            c
        }
        Suite::HElimination => seeded(h_case),
        Suite::Monotonicity => {
            let mut c = per_order(size, monotonicity_order);
            c.extend(seeded(monotonicity_slope_case));
            c
        }
        Suite::DeepFormula => {
            if size == 0 {
                Vec::new()
            } else {
                let slopes = [
                    ContinuedFraction::golden(),
                    ContinuedFraction::construct(4.0, 2.0).expect("valid targets"),
                ];
                slopes.into_par_iter().map(|cf| deep_case(cf, size, 200_000)).collect()
            }
        }
        Suite::Exponents => seeded(exponent_case),
        Suite::All => unreachable!("expanded by verify"),
    };
    collect(suite, cases)
}

/// Runs a suite at the given size; deterministic for a fixed seed.
pub fn verify(suite: Suite, size: usize, seed: u64) -> VerifyReport {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let results: Vec<SuiteResult> = suites.into_iter().map(|s| run_one(s, size, seed)).collect();
    VerifyReport {
        suite: suite.to_string(),
        size,
        seed,
        pass: results.iter().all(|r| r.pass),
        results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for s in Suite::EACH {
            let r = verify(s, 6, 11);
            assert!(r.pass, "{s}: {:?}", r.results[0].failures);
        }
        let empty = verify(Suite::All, 0, 1);
        assert!(empty.pass);
        assert!(empty.results.iter().all(|r| r.cases == 0));
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(verify(Suite::HElimination, 8, 3), verify(Suite::HElimination, 8, 3));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
