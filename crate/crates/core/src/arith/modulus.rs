use super::factor::{factorize, Factorization, P_MINUS_ONE_CAP_BITS};
use super::primes::is_prime;
use super::{pow_mod, ArithError};
use crate::natural::{nat, Natural};

/// An odd prime together with the factorization of `p - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeModulus<T: Natural> {
    p: T,
    pm1_factors: Factorization<T>,
}

impl<T: Natural> PrimeModulus<T> {
    pub fn new(p: T) -> Result<Self, ArithError> {
        if p.is_even() || !is_prime(&p) {
            return Err(ArithError::NotOddPrime(p.to_string()));
        }
        let pm1_factors = factorize(&(p.clone() - T::one()), P_MINUS_ONE_CAP_BITS)?;
        Ok(Self { p, pm1_factors })
    }

    pub fn prime(&self) -> &T {
        &self.p
    }

    pub fn p_minus_one(&self) -> T {
        self.p.clone() - T::one()
    }

    pub fn p_minus_one_factors(&self) -> &Factorization<T> {
        &self.pm1_factors
    }

    /// v2(p - 1); the exponent of 2 in the stored factorization.
    pub fn v2_p_minus_one(&self) -> u64 {
        self.pm1_factors
            .iter()
            .find(|(q, _)| *q == nat::<T>(2))
            .map_or(0, |(_, e)| *e as u64)
    }

    pub fn reduce(&self, n: &T) -> T {
        n.clone() % self.p.clone()
    }

    fn reduce_nonzero(&self, n: &T) -> Result<T, ArithError> {
        let r = self.reduce(n);
        if r.is_zero() {
            Err(ArithError::NotCoprime { n: n.to_string(), p: self.p.to_string() })
        } else {
            Ok(r)
        }
    }

    /// u_p(n): the least `t >= 1` with `n^t = 1 (mod p)`.
    ///
    /// Starts from `p - 1` and strips each prime factor while the power
    /// still lands on 1, so the cost is polynomial in the factor count.
    pub fn multiplicative_order(&self, n: &T) -> Result<T, ArithError> {
        let n = self.reduce_nonzero(n)?;
        let mut t = self.p_minus_one();
        for (r, e) in &self.pm1_factors {
            for _ in 0..*e {
                let candidate = t.clone() / r.clone();
                if pow_mod(&n, &candidate, &self.p).is_one() {
                    t = candidate;
                } else {
                    break;
                }
            }
        }
        Ok(t)
    }

    pub fn is_primitive_root(&self, d: &T) -> bool {
        let d = self.reduce(d);
        if d.is_zero() {
            return false;
        }
        let pm1 = self.p_minus_one();
        self.pm1_factors
            .iter()
            .all(|(r, _)| !pow_mod(&d, &(pm1.clone() / r.clone()), &self.p).is_one())
    }

    /// The smallest `d >= 2` of order exactly `p - 1`.
    pub fn find_primitive_root(&self) -> T {
        let mut d: T = nat(2);
        loop {
            if self.is_primitive_root(&d) {
                return d;
            }
            d = d + T::one();
        }
    }
}

/// Free-function form of [`PrimeModulus::multiplicative_order`].
pub fn multiplicative_order<T: Natural>(n: &T, modulus: &PrimeModulus<T>) -> Result<T, ArithError> {
    modulus.multiplicative_order(n)
}

pub fn find_primitive_root<T: Natural>(modulus: &PrimeModulus<T>) -> T {
    modulus.find_primitive_root()
}
