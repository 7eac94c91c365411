use mtc::numeric::to_complex;
use mtc::{arith, CycNumber, Rational};
use proptest::prelude::*;

fn conductor() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![1u64, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24, 28, 36, 40])
}

fn cyc() -> impl Strategy<Value = CycNumber> {
    (conductor(), prop::collection::vec((0i64..40, -6i64..7, 1i64..5), 0..6)).prop_map(|(n, terms)| {
        let t: Vec<(i64, Rational)> = terms
            .into_iter()
            .map(|(e, a, b)| (e % n as i64, Rational::new(a.into(), b.into())))
            .collect();
        CycNumber::canonicalize(n, &t)
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse(a in cyc()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn galois_is_a_homomorphism(a in cyc(), b in cyc(), k in 1i64..200, l in 1i64..200) {
        let n = arith::lcm(a.conductor(), b.conductor()) as i64;
        prop_assume!(arith::gcd(k as u64, n as u64) == 1 && arith::gcd(l as u64, n as u64) == 1);
        prop_assert_eq!((&a * &b).galois(k).unwrap(), &a.galois(k).unwrap() * &b.galois(k).unwrap());
        prop_assert_eq!((&a + &b).galois(k).unwrap(), &a.galois(k).unwrap() + &b.galois(k).unwrap());
        prop_assert_eq!(a.galois(l).unwrap().galois(k).unwrap(), a.galois(k * l).unwrap());
    }

    #[test]
    fn sqrt_squares_back(m in -60i64..60) {
        prop_assume!(m != 0);
        let r = CycNumber::embed_sqrt(m);
        prop_assert_eq!(&r * &r, CycNumber::from_i64(m));
        prop_assert!((4 * m.unsigned_abs()) % r.conductor() == 0);
        let (re, im) = to_complex(&r);
        if m > 0 { prop_assert!(re > 0.0 && im.abs() < 1e-9) } else { prop_assert!(im > 0.0 && re.abs() < 1e-9) }
    }

    #[test]
    fn canonical_form_matches_direct_evaluation(n in conductor(), terms in prop::collection::vec((0i64..40, -6i64..7), 0..6)) {
        let t: Vec<(i64, Rational)> = terms.iter().map(|&(e, a)| (e % n as i64, Rational::from_integer(a.into()))).collect();
        let x = CycNumber::canonicalize(n, &t);
        let (mut re, mut im) = (0.0, 0.0);
        for &(e, a) in &terms {
            let th = 2.0 * std::f64::consts::PI * ((e % n as i64) as f64) / n as f64;
            re += a as f64 * th.cos();
            im += a as f64 * th.sin();
        }
        prop_assert!(close(to_complex(&x), (re, im)));
        prop_assert!(n % x.conductor() == 0);
    }

    #[test]
    fn real_sign_agrees_with_floats(a in cyc()) {
        let r = &a + &a.conj();
        let v = to_complex(&r).0;
        prop_assume!(v.abs() > 1e-6);
        let want = if v > 0.0 { std::cmp::Ordering::Greater } else { std::cmp::Ordering::Less };
        prop_assert_eq!(r.real_sign(), Some(want));
    }

    #[test]
    fn serialization_round_trip(a in cyc()) {
        let js = serde_json::to_string(&a).unwrap();
        let back: CycNumber = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }
}

#[test]
fn zeta6_lives_in_conductor_3() {
    let z = CycNumber::canonicalize(6, &[(1, Rational::from_integer(1.into()))]);
    assert_eq!(z.conductor(), 3);
    let (re, im) = to_complex(&z);
    assert!(close((re, im), (0.5, 3f64.sqrt() / 2.0)));
    assert_eq!(CycNumber::canonicalize(40, &[]).conductor(), 1);
}
