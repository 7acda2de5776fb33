//! Integer factorization: trial division, then Brent's variant of Pollard rho.


use super::primes::is_prime;
use super::ArithError;
use crate::natural::{nat, Natural};

/// Trial division bound before switching to rho.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Bit cap applied to `p - 1` when building a [`PrimeModulus`](super::PrimeModulus).
pub const P_MINUS_ONE_CAP_BITS: u64 = 64;

const RHO_ATTEMPTS: u64 = 64;

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub type Factorization<T> = Vec<(T, u32)>;

/// Factors `n >= 1`. Rejects inputs wider than `cap_bits` bits; never
/// returns a partial or guessed factorization.
pub fn factorize<T: Natural>(n: &T, cap_bits: u64) -> Result<Factorization<T>, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroArgument("factorize"));
    }
    if n.bit_length() > cap_bits {
        return Err(ArithError::FactorCapExceeded { bits: n.bit_length(), cap: cap_bits });
    }
    let mut rest = n.clone();
    let mut primes: Vec<T> = Vec::new();

    let two: T = nat(2);
    while rest.is_even() && !rest.is_zero() {
        primes.push(two.clone());
        rest = rest / two.clone();
    }
    let mut d = 3u64;
    while d <= TRIAL_DIVISION_LIMIT {
        let dt: T = nat(d);
        if dt.clone() * dt.clone() > rest {
            break;
        }
        while (rest.clone() % dt.clone()).is_zero() {
            primes.push(dt.clone());
            rest = rest / dt.clone();
        }
        d += 2;
    }

    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_prime(&m) {
                primes.push(m);
                continue;
            }
            if let Some(r) = exact_square_root(&m) {
                stack.push(r.clone());
                stack.push(r);
                continue;
            }
            let split = brent_rho(&m).ok_or_else(|| ArithError::FactorizationFailed(m.to_string()))?;
            stack.push(m.clone() / split.clone());
            stack.push(split);
        }
    }

    primes.sort();
    let mut out: Factorization<T> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((last, e)) if *last == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Distinct prime divisors only.
pub fn prime_divisors<T: Natural>(n: &T, cap_bits: u64) -> Result<Vec<T>, ArithError> {
    Ok(factorize(n, cap_bits)?.into_iter().map(|(p, _)| p).collect())
}

fn exact_square_root<T: Natural>(m: &T) -> Option<T> {
    let r = m.sqrt();
    (r.clone() * r.clone() == *m).then_some(r)
}

/// A non-trivial divisor of the odd composite `n`, or `None` if every
/// attempted polynomial cycles without splitting.
fn brent_rho<T: Natural>(n: &T) -> Option<T> {
    let one = T::one();
    for c in 1..=RHO_ATTEMPTS {
        let c: T = nat(c);
        let step = |x: &T| (x.mul_mod(x, n) + c.clone()) % n.clone();
        let mut y: T = nat(2);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let block = 128u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..block.min(r - k) {
                    y = step(&y);
                    q = q.mul_mod(&abs_diff(&x, &y), n);
                }
                g = q.gcd(n);
                k += block;
            }
            r *= 2;
            if r > (1 << 26) {
                break;
            }
        }
        if g == *n || g.is_zero() {
            // backtrack one step at a time
            loop {
                ys = step(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n && !g.is_zero() {
            return Some(g);
        }
    }
    None
}

fn abs_diff<T: Natural>(a: &T, b: &T) -> T {
    if a >= b {
        a.clone() - b.clone()
    } else {
        b.clone() - a.clone()
    }
}

/// Product of the distinct primes dividing `n`.
pub fn radical<T: Natural>(n: &T, cap_bits: u64) -> Result<T, ArithError> {
    let mut r = T::one();
    for p in prime_divisors(n, cap_bits)? {
        r = r * p;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn multiply<T: Natural>(f: &Factorization<T>) -> T {
        f.iter().fold(T::one(), |acc, (p, e)| acc * p.checked_pow_n(*e).unwrap())
    }

    #[test]
    fn small_values() {
        assert_eq!(factorize(&1u64, 64).unwrap(), vec![]);
        assert_eq!(factorize(&240u64, 64).unwrap(), vec![(2, 4), (3, 1), (5, 1)]);
        assert_eq!(factorize(&112u64, 64).unwrap(), vec![(2, 4), (7, 1)]);
        assert!(matches!(factorize(&0u64, 64), Err(ArithError::ZeroArgument(_))));
    }

    #[test]
    fn rho_splits_large_semiprimes() {
        let n = 1_000_000_007u64 * 998_244_353u64;
        assert_eq!(factorize(&n, 64).unwrap(), vec![(998_244_353, 1), (1_000_000_007, 1)]);
        let sq = 4_294_967_291u64 * 4_294_967_291u64;
        assert_eq!(factorize(&sq, 64).unwrap(), vec![(4_294_967_291, 2)]);
        let wide: u128 = 1_000_000_007u128 * 1_000_000_009u128 * 1_000_003u128;
        let f = factorize(&wide, 80).unwrap();
        assert_eq!(multiply(&f), wide);
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let big = BigUint::from(1u32) << 90u32;
        assert!(matches!(
            factorize(&big, 80),
            Err(ArithError::FactorCapExceeded { bits: 91, cap: 80 })
        ));
    }

    #[test]
    fn every_factorization_multiplies_back() {
        for n in 1..5_000u64 {
            let f = factorize(&n, 64).unwrap();
            assert_eq!(multiply(&f), n);
            assert!(f.iter().all(|(p, _)| super::super::primes::is_prime_u64(*p)));
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn radicals() {
        assert_eq!(radical(&72u64, 64).unwrap(), 6);
        assert_eq!(radical(&1u64, 64).unwrap(), 1);
        let n: u128 = 2 * 6_436_341 * 6_436_343;
        assert_eq!(radical(&n, 80).unwrap(), 2 * 3 * 109 * 23);
    }
}
