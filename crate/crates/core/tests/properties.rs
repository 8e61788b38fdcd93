use num_traits::One;
use proptest::prelude::*;

use bcz::analysis::{eliminate_max, fhat_from_f, h_rational, reduce_fully, theoretical_limsup, PositiveSequence};
use bcz::bcz::{fhat_series, orbit_iter, Direction, FareyPoint, RationalPoint, XValue};
use bcz::excursion::{coprime_pair_count, coprime_pair_count_mobius, detect_excursions, Mode};
use bcz::numerics::{BigInt, BigRational};

fn q(n: u64, d: u64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn point() -> impl Strategy<Value = RationalPoint> {
    (2u64..200)
        .prop_flat_map(|d| (Just(d), 1..=d))
        .prop_flat_map(|(d, x)| (Just(d), Just(x), d - x + 1..=d))
        .prop_map(|(d, x, y)| RationalPoint::from_scaled(x.into(), y.into(), d.into()).unwrap())
}

fn orbit_a(pt: &FareyPoint, n: usize) -> Vec<BigRational> {
    let mut a = vec![pt.a_value().exact().unwrap().clone()];
    a.extend(orbit_iter(pt, n, Direction::Forward).map(|s| s.unwrap().a.exact().unwrap().clone()));
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn step_stays_in_triangle(p in point()) {
        let n = p.step();
        let (a, b) = (n.a(), n.b());
        prop_assert!(a > BigRational::from_integer(0.into()) && a <= BigRational::one());
        prop_assert!(b > BigRational::from_integer(0.into()) && b <= BigRational::one());
        prop_assert!(a + b > BigRational::one());
    }

    #[test]
    fn f_is_h_of_prefix(p in point(), n in 1usize..60) {
        let pt = FareyPoint::Rational(p);
        let a = orbit_a(&pt, n + 1);
        let last = orbit_iter(&pt, n, Direction::Forward).last().unwrap().unwrap();
        prop_assert_eq!(h_rational(&a[..n + 2]).unwrap(), BigRational::from_integer(last.f));
    }

    #[test]
    fn elimination_and_reduction_keep_h(p in point(), start in 0usize..40, len in 5usize..25) {
        let pt = FareyPoint::Rational(p);
        let a = orbit_a(&pt, start + len);
        let seq = a[start..start + len].to_vec();
        let want = h_rational(&seq).unwrap();
        let s = PositiveSequence::from_rationals(seq).unwrap();
        if let Ok((next, r)) = eliminate_max(&s) {
            prop_assert!(r >= 3 && r <= len - 2);
            prop_assert_eq!(h_rational(&next.rationals().unwrap()).unwrap(), want.clone());
        }
        if let Ok(red) = reduce_fully(&s) {
            prop_assert_eq!(h_rational(&red.sequence.rationals().unwrap()).unwrap(), want);
        }
    }

    #[test]
    fn fhat_matches_f(p in point(), n in 1usize..200) {
        let pt = FareyPoint::Rational(p);
        let f: Vec<BigInt> = orbit_iter(&pt, n, Direction::Forward).map(|s| s.unwrap().f).collect();
        prop_assert_eq!(fhat_series(&pt, n).unwrap(), fhat_from_f(&f, &pt.k_transpose().unwrap()));
    }

    #[test]
    fn mobius_matches_direct(x in 1u64..80, dx in 1u64..80, y in 1u64..80, dy in 1u64..80) {
        let (x, y) = (q(x.min(dx), dx), q(y.min(dy), dy));
        let (x, y) = (XValue::Exact(x), XValue::Exact(y));
        prop_assert_eq!(coprime_pair_count(&x, &y).unwrap(), coprime_pair_count_mobius(&x, &y).unwrap());
    }

    #[test]
    fn rational_excursions_obey_count(p in point()) {
        let pt = FareyPoint::Rational(p);
        let a: Vec<XValue> = orbit_a(&pt, 300).into_iter().map(XValue::Exact).collect();
        for e in detect_excursions(&a, Mode::All).unwrap() {
            prop_assert_eq!(e.len() as u64 - 1, coprime_pair_count_mobius(&e.a_s, &e.a_t).unwrap());
        }
    }

    #[test]
    fn limsup_direction_swap(x in 1.0f64..20.0, y in 1.0f64..20.0) {
        let f = theoretical_limsup(x, y, Direction::Forward);
        let b = theoretical_limsup(y, x, Direction::Backward);
        prop_assert!((f - b).abs() < 1e-12);
        prop_assert!((0.0..1.0).contains(&f));
    }
}
