use expdio::contfrac::{
    convergents, k_periodicity_check, ContFracError, lemma32_check, lemma35_expected, pell_fundamental, small_norm_classification,
    sqrt_cf, PellNorm,
};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn is_square(d: u64) -> bool {
    let r = d.sqrt();
    r * r == d
}

fn non_squares(max: u64) -> impl Iterator<Item = u64> {
    (2..=max).filter(|&d| !is_square(d))
}

/// Fundamental solution of `x^2 - D y^2 = 1` by the chakravala method,
/// independent of continued fractions.
fn chakravala(d: u64) -> (BigUint, BigUint) {
    let dd = BigInt::from(d);
    let root = d.sqrt();
    let mut a = BigInt::from(if (root + 1) * (root + 1) - d < d - root * root { root + 1 } else { root });
    let mut b = BigInt::one();
    let mut k = &a * &a - &dd;
    while k != BigInt::one() {
        let ak = k.abs();
        let ak_u = ak.to_u64().unwrap();
        // m > 0 with k | a + b m, minimising |m^2 - D|
        let limit = 2 * root + ak_u + 2;
        let mut best: Option<(u64, u64)> = None;
        for m in 1..=limit {
            if ((&a + &b * BigInt::from(m)) % &ak).is_zero() {
                let dist = (m * m).abs_diff(d);
                if best.is_none_or(|(_, bd)| dist < bd) {
                    best = Some((m, dist));
                }
            }
        }
        let m = BigInt::from(best.unwrap().0);
        let na = (&a * &m + &dd * &b) / &ak;
        let nb = (&a + &b * &m) / &ak;
        let nk = (&m * &m - &dd) / &k;
        a = na.abs();
        b = nb.abs();
        k = nk;
    }
    (a.to_biguint().unwrap(), b.to_biguint().unwrap())
}

fn brute_minus(d: u64) -> Option<(u64, u64)> {
    // brute force over y for the small cases where it is cheap
    (1..=2_000_000u64).find_map(|y| {
        let t = d * y * y - 1;
        let x = t.sqrt();
        (x * x == t).then_some((x, y))
    })
}

#[test]
fn expansion_and_convergent_invariants() {
    for d in non_squares(2000) {
        let db = BigUint::from(d);
        let cf = sqrt_cf(&db).unwrap();
        let a0 = d.sqrt();
        assert_eq!(cf.a0(), &BigUint::from(a0));
        let s = cf.s();
        assert_eq!(cf.period()[s - 1], BigUint::from(2 * a0));
        let inner = &cf.period()[..s - 1];
        assert!(inner.iter().eq(inner.iter().rev()), "D = {d}: not a palindrome");

        let conv = convergents(&db, 2 * s + 2).unwrap();
        for (i, c) in conv.iter().enumerate() {
            assert!(c.p.gcd(&c.q).is_one());
            let lhs = BigInt::from(c.p.clone()).pow(2) - BigInt::from(c.q.clone()).pow(2) * BigInt::from(d);
            let k = BigInt::from(c.k.clone());
            assert_eq!(lhs, if i % 2 == 0 { -k } else { k });
            assert!(c.k < BigUint::from(2 * a0 + 1), "D = {d}, m = {i}");
            if i > 0 {
                let prev = &conv[i - 1];
                let det = BigInt::from(&c.p * &prev.q) - BigInt::from(&prev.p * &c.q);
                let expect = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                // P_m Q_{m-1} - P_{m-1} Q_m = (-1)^(m+1)
                assert_eq!(det, -expect, "D = {d}, m = {i}");
            }
        }
    }
}

#[test]
fn k_sequence_is_periodic() {
    for d in non_squares(500) {
        assert!(k_periodicity_check(&BigUint::from(d), 3).unwrap(), "D = {d}");
    }
    // fixed-width arithmetic reports overflow rather than wrapping
    for d in [199u64, 211, 214] {
        assert_eq!(k_periodicity_check(&d, 40), Err(ContFracError::Overflow));
    }
}

#[test]
fn pell_solutions_are_fundamental() {
    for d in non_squares(200) {
        let plus = pell_fundamental(&BigUint::from(d), PellNorm::Plus).unwrap().unwrap();
        assert!(plus.verify());
        assert_eq!((plus.h.clone(), plus.k.clone()), chakravala(d), "D = {d}");

        let minus = pell_fundamental(&BigUint::from(d), PellNorm::Minus).unwrap();
        match minus {
            Some(sol) => {
                assert!(sol.verify());
                // the square of the fundamental -1 unit is the fundamental +1 unit
                let sq = sol.power(2).unwrap();
                assert_eq!((sq.h, sq.k), (plus.h.clone(), plus.k.clone()));
                if sol.k < BigUint::from(2_000_000u32) {
                    let (x, y) = brute_minus(d).unwrap();
                    assert_eq!((sol.h.clone(), sol.k.clone()), (BigUint::from(x), BigUint::from(y)));
                }
            }
            None => {
                // no -1 solution below the +1 fundamental
                if plus.k < BigUint::from(2_000_000u32) {
                    let limit = plus.k.to_u64().unwrap();
                    assert!(brute_minus(d).is_none_or(|(_, y)| y > limit), "D = {d}");
                }
            }
        }
    }
}

#[test]
fn closed_form_family() {
    for p in (3u64..=49).step_by(2) {
        for n in 1..=3 {
            let pb = BigUint::from(p);
            let (exp, conv) = lemma35_expected(&pb, n).unwrap();
            let d = pb.pow(2 * n) + 4u32;
            assert_eq!(sqrt_cf(&d).unwrap(), exp);
            assert_eq!(convergents(&d, 5).unwrap(), conv.to_vec());
            let pn = pb.pow(n);
            let ks: Vec<BigUint> = conv.iter().map(|c| c.k.clone()).collect();
            assert_eq!(ks, vec![4u32.into(), pn.clone(), pn.clone(), 4u32.into(), 1u32.into()]);
            let sol = pell_fundamental(&d, PellNorm::Minus).unwrap().unwrap();
            assert_eq!((sol.h, sol.k), (conv[4].p.clone(), conv[4].q.clone()));
        }
    }
}

#[test]
fn negative_pell_prime_divisors() {
    for d in non_squares(2000) {
        let db = BigUint::from(d);
        if pell_fundamental(&db, PellNorm::Minus).unwrap().is_some() {
            assert!(lemma32_check(&db, 4).unwrap(), "D = {d}");
        }
    }
    assert!(lemma32_check(&BigUint::from(3u32), 4).is_err());
}

#[test]
fn small_norms_are_convergent_norms() {
    for d in non_squares(300) {
        assert!(small_norm_classification(&BigUint::from(d), 200).unwrap(), "D = {d}");
    }
}

proptest! {
    #[test]
    fn period_parity_decides_negative_pell(d in 2u64..5000) {
        prop_assume!(!is_square(d));
        let cf = sqrt_cf(&BigUint::from(d)).unwrap();
        let minus = pell_fundamental(&BigUint::from(d), PellNorm::Minus).unwrap();
        prop_assert_eq!(minus.is_some(), cf.s() % 2 == 1);
        if let Some(sol) = minus {
            let lhs = BigInt::from(sol.h.clone()).pow(2) - BigInt::from(sol.k.clone()).pow(2) * BigInt::from(d);
            prop_assert_eq!(lhs, BigInt::from_biguint(Sign::Minus, BigUint::one()));
        }
    }

    #[test]
    fn u64_and_bigint_expansions_agree(d in 2u64..1_000_000) {
        prop_assume!(!is_square(d));
        let small = sqrt_cf(&d).unwrap();
        let big = sqrt_cf(&BigUint::from(d)).unwrap();
        prop_assert_eq!(small.s(), big.s());
        for (a, b) in small.period().iter().zip(big.period()) {
            prop_assert_eq!(BigUint::from(*a), b.clone());
        }
    }
}
