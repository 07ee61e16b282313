//! Property and oracle tests for polynomial arithmetic.

use exactnum::{cyclo::sqrt_positive_integer, rat, rat_int, CycloNumber};
use polyring::{multi_factorial, weighted_monomials, MultiPoly, VarFrame};
use proptest::prelude::*;
use std::sync::Arc;

fn arb_coeff() -> impl Strategy<Value = CycloNumber> {
    ((-6i64..=6), (1i64..=4), (0i64..=3)).prop_map(|(n, d, k)| {
        CycloNumber::root_of_unity(12, k).mul_rat(&rat(n, d))
    })
}

fn arb_poly(frame: Arc<VarFrame>, max_deg: u16) -> impl Strategy<Value = MultiPoly> {
    let n = frame.len();
    proptest::collection::vec(
        (proptest::collection::vec(0..=max_deg, n), arb_coeff()),
        0..6,
    )
    .prop_map(move |terms| {
        let mut p = MultiPoly::zero(&frame);
        for (exp, c) in terms {
            p += &MultiPoly::monomial(&frame, exp, c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(
        a in arb_poly(VarFrame::standard("z", 2), 3),
        b in arb_poly(VarFrame::standard("z", 2), 3),
        c in arb_poly(VarFrame::standard("z", 2), 3),
    ) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn derivatives_commute(
        p in arb_poly(VarFrame::standard("z", 2), 3),
        a1 in 0u16..=2, a2 in 0u16..=2, b1 in 0u16..=2, b2 in 0u16..=2,
    ) {
        let ab = [a1 + b1, a2 + b2];
        let via_a_then_b = p.partial_derivative(&[a1, a2]).partial_derivative(&[b1, b2]);
        let via_b_then_a = p.partial_derivative(&[b1, b2]).partial_derivative(&[a1, a2]);
        let direct = p.partial_derivative(&ab);
        prop_assert_eq!(&via_a_then_b, &via_b_then_a);
        prop_assert_eq!(via_a_then_b, direct);
    }

    #[test]
    fn evaluation_commutes_with_composition(
        p in arb_poly(VarFrame::standard("u", 2), 2),
        s1 in arb_poly(VarFrame::standard("z", 2), 2),
        s2 in arb_poly(VarFrame::standard("z", 2), 2),
        n1 in -3i64..=3, n2 in -3i64..=3,
    ) {
        let pt = vec![CycloNumber::from_int(n1), CycloNumber::from_int(n2)];
        let subs = [s1, s2];
        let composed = p.compose(&subs).unwrap();
        let inner: Vec<CycloNumber> = subs.iter().map(|s| s.evaluate(&pt)).collect();
        prop_assert_eq!(composed.evaluate(&pt), p.evaluate(&inner));
    }

    #[test]
    fn product_divided_by_factor_recovers_cofactor(
        a in arb_poly(VarFrame::standard("z", 2), 3),
        b in arb_poly(VarFrame::standard("z", 2), 3),
    ) {
        if !b.is_zero() {
            let p = &a * &b;
            prop_assert_eq!(p.exact_divide(&b).unwrap(), a);
        }
    }
}

#[test]
fn weighted_monomials_match_brute_force_box() {
    let catalog_weights: [&[u32]; 10] = [
        &[12, 6],
        &[12, 4],
        &[8, 6],
        &[12, 8],
        &[20, 12],
        &[6, 4, 2, 4],
        &[9, 6, 3, 4],
        &[8, 6, 4, 2],
        &[6, 4, 2],
        &[4, 2],
    ];
    for weights in catalog_weights {
        let d1 = weights[0];
        for k in 0..=2u32 {
            for &alpha_deg in weights {
                let target = alpha_deg + k * d1;
                for min_support in [0u32, 2, 3] {
                    for zero_prefix in 0..=1usize {
                        let fast = weighted_monomials(weights, target, min_support, zero_prefix);
                        let slow = brute_force(weights, target, min_support, zero_prefix);
                        assert_eq!(fast.indices, slow, "d={weights:?} D={target} m={min_support} p={zero_prefix}");
                    }
                }
            }
        }
    }
}

fn brute_force(weights: &[u32], target: u32, min_support: u32, zero_prefix: usize) -> Vec<Vec<u16>> {
    let n = weights.len();
    let bounds: Vec<u16> = weights.iter().map(|&d| (target / d) as u16).collect();
    let mut out = Vec::new();
    let mut a = vec![0u16; n];
    loop {
        let dot: u32 = a.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        let total: u32 = a.iter().map(|&e| e as u32).sum();
        let prefix_ok = a[..zero_prefix].iter().all(|&e| e == 0);
        if dot == target && total >= min_support && prefix_ok {
            out.push(a.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by_key(|v| (v.iter().map(|&e| e as u32).sum::<u32>(), v.clone()));
                return out;
            }
            if a[i] < bounds[i] {
                a[i] += 1;
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn factorial_uses_arbitrary_precision() {
    // 25! · 3! exceeds u64 by far.
    let f = multi_factorial(&[25, 3]);
    assert_eq!(f.to_string(), "93067260259985915904000000");
    assert!(f > num_bigint::BigInt::from(u64::MAX));
}

/// The hexagonal-family invariant pair expanded through the eigenframe
/// change of coordinates, against the worked reference expansion.
#[test]
fn quartic_invariant_cube_matches_reference_expansion() {
    let u = VarFrame::standard("u", 2);
    let z = VarFrame::standard("z", 2);
    let i_sqrt3 =
        CycloNumber::root_of_unity(3, 1).mul_rat(&rat_int(2)) + CycloNumber::one();

    // f = u1^4 + 2i√3 u1^2 u2^2 + u2^4, t = u1^5 u2 − u1 u2^5.
    let f_t = MultiPoly::monomial(&u, vec![4, 0], CycloNumber::one())
        + MultiPoly::monomial(&u, vec![2, 2], i_sqrt3.mul_rat(&rat_int(2)))
        + MultiPoly::monomial(&u, vec![0, 4], CycloNumber::one());
    let t_t = MultiPoly::monomial(&u, vec![5, 1], CycloNumber::one())
        + MultiPoly::monomial(&u, vec![1, 5], CycloNumber::from_int(-1));

    // u1 = (z1 − z2)/√2, u2 = (z1 + z2)/√2.
    let inv_sqrt2 = sqrt_positive_integer(2).inv().unwrap();
    let u1 = (MultiPoly::var(&z, 0) - MultiPoly::var(&z, 1)).mul_scalar(&inv_sqrt2);
    let u2 = (MultiPoly::var(&z, 0) + MultiPoly::var(&z, 1)).mul_scalar(&inv_sqrt2);
    let subs = [u1, u2];

    let f_cubed_z = f_t.pow(3).compose(&subs).unwrap();
    let expected = MultiPoly::monomial(&z, vec![12, 0], CycloNumber::from_int(-1))
        + MultiPoly::monomial(&z, vec![10, 2], i_sqrt3.mul_rat(&rat_int(6)))
        + MultiPoly::monomial(&z, vec![8, 4], CycloNumber::from_int(33))
        + MultiPoly::monomial(&z, vec![6, 6], i_sqrt3.mul_rat(&rat_int(-12)))
        + MultiPoly::monomial(&z, vec![4, 8], CycloNumber::from_int(33))
        + MultiPoly::monomial(&z, vec![2, 10], i_sqrt3.mul_rat(&rat_int(6)))
        + MultiPoly::monomial(&z, vec![0, 12], CycloNumber::from_int(-1));
    assert_eq!(f_cubed_z, expected);

    let t_z = t_t.compose(&subs).unwrap();
    let expected_t = MultiPoly::monomial(&z, vec![5, 1], CycloNumber::from_int(-1))
        + MultiPoly::monomial(&z, vec![1, 5], CycloNumber::one());
    assert_eq!(t_z, expected_t);
}

#[test]
fn evaluation_oracle_at_symmetric_point() {
    // f at (1/√2, 1/√2) equals (1 + i√3)/2; t vanishes there.
    let u = VarFrame::standard("u", 2);
    let i_sqrt3 =
        CycloNumber::root_of_unity(3, 1).mul_rat(&rat_int(2)) + CycloNumber::one();
    let f_t = MultiPoly::monomial(&u, vec![4, 0], CycloNumber::one())
        + MultiPoly::monomial(&u, vec![2, 2], i_sqrt3.mul_rat(&rat_int(2)))
        + MultiPoly::monomial(&u, vec![0, 4], CycloNumber::one());
    let t_t = MultiPoly::monomial(&u, vec![5, 1], CycloNumber::one())
        + MultiPoly::monomial(&u, vec![1, 5], CycloNumber::from_int(-1));
    let q1 = vec![
        sqrt_positive_integer(2).inv().unwrap(),
        sqrt_positive_integer(2).inv().unwrap(),
    ];
    let expected = (CycloNumber::one() + i_sqrt3).mul_rat(&rat(1, 2));
    assert_eq!(f_t.evaluate(&q1), expected);
    assert!(t_t.evaluate(&q1).is_zero());
}
