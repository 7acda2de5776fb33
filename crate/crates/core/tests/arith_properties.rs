use expdio::arith::{
    eth_power_residue, factorize, is_prime, mod_pow, multiplicative_order, primes_in_range, radical, represent_form,
    FormConstant, IndexTable, PrimeModulus,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn naive_is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn brute_order(n: u64, p: u64) -> u64 {
    let (mut x, mut t) = (n % p, 1);
    while x != 1 {
        x = x * n % p;
        t += 1;
    }
    t
}

#[test]
fn primality_agrees_with_trial_division() {
    let sieved = primes_in_range(0, 20_000);
    let naive: Vec<u64> = (0..=20_000).filter(|&n| naive_is_prime(n)).collect();
    assert_eq!(sieved, naive);
    for n in 0..20_000u64 {
        assert_eq!(is_prime(&n), naive_is_prime(n), "{n}");
    }
}

#[test]
fn primality_of_large_values() {
    let m127 = (BigUint::from(1u32) << 127u32) - 1u32;
    assert!(is_prime(&m127));
    assert!(!is_prime(&(&m127 * &m127)));
    // strong pseudoprime to bases 2..=37 is still composite for the deterministic set
    assert!(!is_prime(&3_825_123_056_546_413_051u64));
    for carmichael in [561u64, 1105, 1729, 2465, 2821, 6601, 8911] {
        assert!(!is_prime(&carmichael));
    }
}

#[test]
fn quartic_residue_for_representable_primes() {
    for p in primes_in_range(3, 100_000) {
        if represent_form(&p, FormConstant::K64).is_some() {
            // oracle: 2 is a fourth power iff its order divides (p - 1) / 4
            assert_eq!((p - 1) % 4, 0);
            assert_eq!(((p - 1) / 4) % brute_order(2, p), 0, "p = {p}");
            assert!(eth_power_residue(&2u64, &p, 4).unwrap());
        }
    }
}

#[test]
fn octic_residue_iff_representable() {
    for q in primes_in_range(3, 100_000).into_iter().filter(|q| q % 16 == 1) {
        let oracle = ((q - 1) / 8) % brute_order(2, q) == 0;
        assert_eq!(eth_power_residue(&2u64, &q, 8).unwrap(), oracle, "q = {q}");
        assert_eq!(represent_form(&q, FormConstant::K256).is_some(), oracle, "q = {q}");
    }
}

#[test]
fn w_independent_of_primitive_root() {
    for p in primes_in_range(3, 10_000) {
        let m = PrimeModulus::new(p).unwrap();
        let table = IndexTable::for_smallest_root(&m).unwrap();
        let v2p = m.v2_p_minus_one();
        let other = (2..p).rev().find(|d| m.is_primitive_root(d)).unwrap();
        // discrete logs to the other root by walking its powers
        let mut logs = vec![0u64; p as usize];
        let mut x = 1u64;
        for i in 1..p {
            x = x * other % p;
            logs[x as usize] = i;
        }
        for n in 1..p {
            let oracle = (logs[n as usize].trailing_zeros() as u64).min(v2p);
            assert_eq!(table.w(n).unwrap(), oracle, "p = {p}, n = {n}");
        }
    }
}

proptest! {
    #[test]
    fn order_properties(idx in 0usize..1200, n in 1u64..1_000_000) {
        let primes = primes_in_range(3, 10_000);
        let p = primes[idx % primes.len()];
        prop_assume!(n % p != 0);
        let m = PrimeModulus::new(p).unwrap();
        let u = multiplicative_order(&n, &m).unwrap();
        prop_assert_eq!((p - 1) % u, 0);
        prop_assert_eq!(mod_pow(&n, &u, &p).unwrap(), 1);
        for (r, _) in factorize(&u, 64).unwrap() {
            prop_assert_ne!(mod_pow(&n, &(u / r), &p).unwrap(), 1);
        }
        prop_assert_eq!(u, brute_order(n, p));
    }

    #[test]
    fn mod_pow_matches_bigint(b in any::<u64>(), e in any::<u64>(), m in 2u64..) {
        let expect = BigUint::from(b).modpow(&BigUint::from(e), &BigUint::from(m));
        prop_assert_eq!(BigUint::from(mod_pow(&b, &e, &m).unwrap()), expect.clone());
        let big = mod_pow(&BigUint::from(b), &BigUint::from(e), &BigUint::from(m)).unwrap();
        prop_assert_eq!(big, expect);
    }

    #[test]
    fn factorization_is_complete(n in 2u64..) {
        let f = factorize(&n, 64).unwrap();
        let mut prod = BigUint::from(1u32);
        for (p, e) in &f {
            prop_assert!(naive_is_prime_big(*p));
            prod *= BigUint::from(*p).pow(*e);
        }
        prop_assert_eq!(prod, BigUint::from(n));
        let rad = radical(&n, 64).unwrap();
        prop_assert_eq!(rad, f.iter().map(|(p, _)| *p).product::<u64>());
        prop_assert_eq!(n % rad, 0);
    }
}

fn naive_is_prime_big(p: u64) -> bool {
    if p < 1 << 32 {
        naive_is_prime(p)
    } else {
        // beyond trial-division reach, fall back on a Fermat test to several bases
        [2u64, 3, 5, 7, 11, 13].iter().all(|&b| mod_pow(&b, &(p - 1), &p).unwrap() == 1)
    }
}
