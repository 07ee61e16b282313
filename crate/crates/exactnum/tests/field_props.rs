//! Property tests for the cyclotomic field arithmetic.

use exactnum::{rat, CycloNumber, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn arb_cyclo(order: u32) -> impl Strategy<Value = CycloNumber> {
    let phi = exactnum::euler_phi(order) as usize;
    proptest::collection::vec(arb_rational(), phi).prop_map(move |coeffs| {
        coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| CycloNumber::root_of_unity(order, k as i64).mul_rat(&c))
            .fold(CycloNumber::zero(), |acc, t| acc + t)
            .embed(order)
            .unwrap()
    })
}

fn field_orders() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 4, 8, 12, 20, 24])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative_and_commutative(
        n in field_orders(),
        seed in proptest::collection::vec(arb_rational(), 24),
    ) {
        let (a, b, c) = three_elements(n, &seed);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_is_associative_and_commutative(
        n in field_orders(),
        seed in proptest::collection::vec(arb_rational(), 24),
    ) {
        let (a, b, c) = three_elements(n, &seed);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_distributes_over_addition(
        n in field_orders(),
        seed in proptest::collection::vec(arb_rational(), 24),
    ) {
        let (a, b, c) = three_elements(n, &seed);
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn nonzero_elements_have_inverses(
        n in field_orders(),
        seed in proptest::collection::vec(arb_rational(), 24),
    ) {
        let (a, _, _) = three_elements(n, &seed);
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert!((&a * &inv).is_one());
            prop_assert_eq!(a.checked_div(&a).unwrap(), CycloNumber::one());
        }
    }

    #[test]
    fn embedding_is_injective_ring_morphism(
        seed in proptest::collection::vec(arb_rational(), 24),
    ) {
        let (a, b, _) = three_elements(12, &seed);
        let am = a.embed(24).unwrap();
        let bm = b.embed(24).unwrap();
        prop_assert_eq!((&a * &b).embed(24).unwrap(), &am * &bm);
        prop_assert_eq!((&a + &b).embed(24).unwrap(), &am + &bm);
        prop_assert_eq!(am == bm, a == b);
    }

    #[test]
    fn mixed_order_arithmetic_lands_in_lcm(
        seed in proptest::collection::vec(arb_rational(), 24),
    ) {
        let (a, _, _) = three_elements(8, &seed);
        let (b, _, _) = three_elements(12, &seed);
        let p = &a * &b;
        prop_assert_eq!(p.order(), 24);
        prop_assert_eq!(p, a.embed(24).unwrap() * b.embed(24).unwrap());
    }

    #[test]
    fn serialization_round_trips(
        n in field_orders(),
        seed in proptest::collection::vec(arb_rational(), 24),
    ) {
        let (a, _, _) = three_elements(n, &seed);
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back = CycloNumber::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(a, back);
    }
}

fn three_elements(order: u32, seed: &[Rational]) -> (CycloNumber, CycloNumber, CycloNumber) {
    let phi = exactnum::euler_phi(order) as usize;
    let build = |chunk: &[Rational]| {
        chunk
            .iter()
            .take(phi)
            .enumerate()
            .map(|(k, c)| CycloNumber::root_of_unity(order, k as i64).mul_rat(c))
            .fold(CycloNumber::zero(), |acc, t| acc + t)
            .embed(order)
            .unwrap()
    };
    (build(&seed[0..8]), build(&seed[8..16]), build(&seed[16..24]))
}

#[test]
fn root_of_unity_multiplicative_orders() {
    for n in [3u32, 4, 8, 12, 20, 24] {
        for k in 0..n {
            let z = CycloNumber::root_of_unity(n, k as i64);
            let expected = if k == 0 { 1 } else { (n / n.gcd(&k)) as i64 };
            let mut power = CycloNumber::one();
            let mut order = 0i64;
            loop {
                power = power * &z;
                order += 1;
                if power.is_one() {
                    break;
                }
                assert!(order <= n as i64, "order of z_{n}^{k} exceeded {n}");
            }
            assert_eq!(order, expected, "order of z_{n}^{k}");
        }
    }
}

#[test]
fn negative_exponents_match_inverses() {
    let z = CycloNumber::root_of_unity(20, 3);
    assert_eq!(z.pow(-7).unwrap(), z.inv().unwrap().pow(7).unwrap());
    assert_eq!(CycloNumber::root_of_unity(20, -3), z.inv().unwrap());
}

#[test]
fn sqrt_six_matches_product_of_roots() {
    let s6 = exactnum::cyclo::sqrt_positive_integer(6);
    let s2 = exactnum::cyclo::sqrt_positive_integer(2);
    let s3 = exactnum::cyclo::sqrt_positive_integer(3);
    assert_eq!(s6, s2 * s3);
}
