//! Primality testing and prime enumeration.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Roots;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::pow_mod;
use crate::natural::Natural;

/// Round count used for Miller-Rabin above 2^64.
pub const DEFAULT_MR_ROUNDS: u32 = 30;

/// These bases make Miller-Rabin deterministic for every n < 3.3 * 10^24.
const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const RNG_SEED: u64 = 0x5eed_2_3_5;

pub fn is_prime<T: Natural>(n: &T) -> bool {
    is_prime_with_rounds(n, DEFAULT_MR_ROUNDS)
}

/// Deterministic below 2^64; `rounds` pseudo-random witnesses above. The
/// witness stream comes from a fixed seed so results are reproducible.
pub fn is_prime_with_rounds<T: Natural>(n: &T, rounds: u32) -> bool {
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => is_prime_big(&n.to_big(), rounds),
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &DETERMINISTIC_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let (d, s) = split_odd(n - 1);
    DETERMINISTIC_BASES.iter().all(|&a| strong_probable_prime(n, a, d, s))
}

fn split_odd(mut d: u64) -> (u64, u32) {
    let s = d.trailing_zeros();
    d >>= s;
    (d, s)
}

fn strong_probable_prime(n: u64, a: u64, d: u64, s: u32) -> bool {
    let mut x = pow_mod(&a, &d, &n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = x.mul_mod(&x, &n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn is_prime_big(n: &BigUint, rounds: u32) -> bool {
    let one = BigUint::from(1u32);
    let two = BigUint::from(2u32);
    for &p in &DETERMINISTIC_BASES {
        if (n % p) == BigUint::from(0u32) {
            return *n == BigUint::from(p);
        }
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let witness = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                return true;
            }
        }
        false
    };

    if !DETERMINISTIC_BASES.iter().all(|&a| witness(&BigUint::from(a))) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    (0..rounds).all(|_| {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        witness(&a)
    })
}

/// Primes in the inclusive range `[lo, hi]`, ascending, via a segmented sieve.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let lo = lo.max(2);
    let root = hi.sqrt();
    let base = small_primes_upto(root);

    let width = (hi - lo + 1) as usize;
    let mut composite = vec![false; width];
    for &p in &base {
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut m = start;
        while m <= hi {
            composite[(m - lo) as usize] = true;
            m = match m.checked_add(p) {
                Some(v) => v,
                None => break,
            };
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

/// All primes `<= limit` by the plain sieve of Eratosthenes.
pub fn small_primes_upto(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &p)| p)
        .map(|(i, _)| i as u64)
        .collect()
}
