use expdio::arith::{is_prime, primes_in_range, represent_form, FormConstant};
use expdio::sieve::{
    abc_quality, cong48_check, full_report, legacy_mod24_class, octic_check, order_parity_check, theorem14_bounds,
    valuation_check, CandidatePair, Mod24Class, SolutionShape, Verdict,
};
use expdio::solver::{
    count_solutions, find_solutions, lemma21_scan, lemma22_scan, EquationInstance, Mode, SearchBounds, SolutionTriple,
};
use num_bigint::BigUint;
use num_integer::Integer;
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Every (x, y, z) with c^z below 2^max_bits, by direct enumeration.
fn brute_solutions(a: u64, b: u64, c: u64, bounds: SearchBounds) -> Vec<SolutionTriple> {
    let (a, b, c) = (BigUint::from(a), BigUint::from(b), BigUint::from(c));
    let mut out = Vec::new();
    for z in 1..=bounds.max_z {
        let cz = c.pow(z);
        if cz.bits() > bounds.max_bits {
            break;
        }
        for x in 1.. {
            let ax = a.pow(x);
            if ax >= cz {
                break;
            }
            for y in 1.. {
                let s = &ax + b.pow(y);
                if s > cz {
                    break;
                }
                if s == cz {
                    out.push(SolutionTriple::new(x, y, z));
                }
            }
        }
    }
    out.sort_by_key(|s| s.sort_key());
    out
}

#[test]
fn prime_triples_match_enumeration() {
    let bounds = SearchBounds::new(8, 64).unwrap();
    for &a in &SMALL_PRIMES[..8] {
        for &b in SMALL_PRIMES.iter().filter(|&&b| b > a) {
            for &c in SMALL_PRIMES.iter().filter(|&&c| c != a && c != b) {
                let inst = EquationInstance::new(BigUint::from(a), BigUint::from(b), BigUint::from(c), Mode::Prime).unwrap();
                let set = find_solutions(&inst, bounds).unwrap();
                assert_eq!(set.solutions, brute_solutions(a, b, c, bounds), "({a},{b},{c})");
                assert!(set.exhaustive_within_bounds);
            }
        }
    }
}

#[test]
fn u64_solver_reports_truncation() {
    // 3^41 overflows u64 before max_z is reached
    let inst = EquationInstance::new(2u64, 5, 3, Mode::Prime).unwrap();
    let set = find_solutions(&inst, SearchBounds::new(60, 512).unwrap()).unwrap();
    assert!(!set.exhaustive_within_bounds);
    assert_eq!(set.solutions, vec![SolutionTriple::new(2, 1, 2), SolutionTriple::new(1, 2, 3)]);
}

#[test]
fn lemma_scans_match_enumeration() {
    let primes = primes_in_range(3, 50);
    for &p in &primes {
        for &q in primes.iter().filter(|&&q| q != p) {
            for k in 1..=12u32 {
                let target = BigUint::from(1u32) << k;
                let mut n_sol = 0;
                for n in 1..=30u32 {
                    let qn = BigUint::from(q).pow(n);
                    for m in 1..=30u32 {
                        let pm = BigUint::from(p).pow(m);
                        if pm < qn && &qn - &pm == target {
                            n_sol += 1;
                        }
                    }
                }
                assert_eq!(lemma21_scan(&p, &q, k, 30, 30).unwrap(), n_sol);
                assert!(n_sol <= 1);
            }
        }
    }
    for b in 2u64..40 {
        for c in (b + 1)..=40 {
            if b.gcd(&c) != 1 {
                continue;
            }
            let mut n_sol = 0;
            for z in 1..=40u32 {
                for y in 1..=40u32 {
                    let (cz, by) = (BigUint::from(c).pow(z), BigUint::from(b).pow(y));
                    let diff = if cz > by { &cz - &by } else { &by - &cz };
                    let big = cz.max(by);
                    if diff > BigUint::from(0u32) && BigUint::from(16u32) * &diff * &diff < big {
                        n_sol += 1;
                    }
                }
            }
            assert_eq!(lemma22_scan(&b, &c, 40, 40).unwrap(), n_sol, "b = {b}, c = {c}");
            assert!(n_sol <= 1);
        }
    }
}

#[test]
fn cong48_lies_in_third_legacy_class() {
    let ps: Vec<u64> = primes_in_range(3, 1_000_000).into_iter().filter(|p| p % 48 == 1).collect();
    let qs: Vec<u64> = primes_in_range(3, 1_000_000).into_iter().filter(|q| q % 48 == 17).take(40).collect();
    for &p in &ps {
        for &q in &qs {
            let pair = CandidatePair::new(p, q).unwrap();
            assert!(cong48_check(&pair));
            assert_eq!(legacy_mod24_class(&pair), Some(Mod24Class::P1Q17));
        }
    }
}

#[test]
fn octic_check_agrees_with_representation() {
    for q in primes_in_range(3, 100_000).into_iter().filter(|q| q % 16 == 1) {
        // v2(3 - 1) = 1, so the exemption never applies
        let pair = CandidatePair::new(3u64, q).unwrap();
        assert_eq!(octic_check(&pair).unwrap(), represent_form(&q, FormConstant::K256).is_some(), "q = {q}");
    }
}

#[test]
fn exceptional_triples_fail_the_sieve() {
    for (p, q) in [(3u64, 5u64), (3, 11), (5, 3), (7, 3)] {
        let report = full_report(&CandidatePair::new(p, q).unwrap());
        assert!(!report.survives);
        let inst = EquationInstance::new(2u64, p, q, Mode::Prime).unwrap();
        assert_eq!(count_solutions(&inst, SearchBounds::new(20, 62).unwrap()).unwrap(), 2);
    }
}

fn odd_prime() -> impl Strategy<Value = u64> {
    (3u64..200_000).prop_filter("odd prime", |n| n % 2 == 1 && is_prime(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn survives_is_the_conjunction(p in odd_prime(), q in odd_prime()) {
        prop_assume!(p != q);
        let pair = CandidatePair::new(p, q).unwrap();
        let r = full_report(&pair);
        let expected = cong48_check(&pair)
            && valuation_check(&pair)
            && order_parity_check(&pair).unwrap()
            && octic_check(&pair).unwrap_or(false);
        prop_assert_eq!(r.survives, expected);
        for v in [&r.cong48, &r.val_order, &r.order_parity, &r.octic] {
            if *v != Verdict::Pass {
                prop_assert!(!r.survives);
            }
        }
    }

    #[test]
    fn enlarging_bounds_keeps_solutions(
        ai in 0usize..6, bi in 0usize..15, ci in 0usize..15, z1 in 1u32..8, extra in 0u32..8,
    ) {
        let (a, b, c) = (SMALL_PRIMES[ai], SMALL_PRIMES[bi], SMALL_PRIMES[ci]);
        prop_assume!(a < b && c != a && c != b);
        let inst = EquationInstance::new(BigUint::from(a), BigUint::from(b), BigUint::from(c), Mode::Prime).unwrap();
        let small = find_solutions(&inst, SearchBounds::new(z1, 128).unwrap()).unwrap();
        let large = find_solutions(&inst, SearchBounds::new(z1 + extra, 256).unwrap()).unwrap();
        for s in &small.solutions {
            prop_assert!(large.solutions.contains(s));
            prop_assert!(s.verify(&a, &b, &c));
        }
    }

    #[test]
    fn coprime_instances_match_enumeration(a in 2u64..12, b in 3u64..40, c in 2u64..60) {
        prop_assume!(a < b && a.gcd(&b) == 1);
        let Ok(inst) = EquationInstance::new(a, b, c, Mode::Coprime) else { return Ok(()) };
        let bounds = SearchBounds::new(6, 60).unwrap();
        let set = find_solutions(&inst, bounds).unwrap();
        prop_assert_eq!(set.solutions, brute_solutions(a, b, c, bounds));
    }

    #[test]
    fn abc_quality_symmetric(a in 1u64..1_000_000_000, b in 1u64..1_000_000_000) {
        prop_assume!(a.gcd(&b) == 1);
        let (a, b) = (BigUint::from(a), BigUint::from(b));
        let c = &a + &b;
        let t = abc_quality(&a, &b, &c).unwrap();
        let s = abc_quality(&b, &a, &c).unwrap();
        prop_assert_eq!(&t.rad, &s.rad);
        prop_assert!((t.quality - s.quality).abs() < 1e-6);
        prop_assert!((&a * &b * &c % &t.rad) == BigUint::from(0u32));
    }

    #[test]
    fn theorem14_needs_one_large_exponent(x1 in 1u64..60, x2 in 1u64..120, v2p in 1u64..100, v2q in 1u64..100) {
        let shape = SolutionShape::new(2 * x1, 2, 2 * x2, 1, 3).unwrap();
        if theorem14_bounds(&shape, v2p, v2q) {
            prop_assert!(shape.x1 >= 28 || shape.x2 >= 88);
        }
    }
}
