//! Exact modular and 2-adic arithmetic: valuations, orders, indices,
//! power-residue tests and representations by `a^2 + k b^2`.

pub mod factor;
pub mod index;
pub mod modulus;
pub mod primes;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use factor::{factorize, radical, Factorization};
pub use index::{index, predicted_w_of_negation, w, IndexProfile, IndexTable, INDEX_CAP};
pub use modulus::{find_primitive_root, multiplicative_order, PrimeModulus};
pub use primes::{is_prime, is_prime_with_rounds, primes_in_range};

use crate::natural::{nat, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0}: argument must be non-zero")]
    ZeroArgument(&'static str),
    #[error("modulus must be at least 2")]
    ModulusTooSmall,
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),
    #[error("{n} is divisible by {p}")]
    NotCoprime { n: String, p: String },
    #[error("discrete log unsupported for p = {0} (cap 2^50)")]
    IndexCapExceeded(String),
    #[error("{d} is not a primitive root modulo {p}")]
    NotPrimitiveRoot { d: String, p: String },
    #[error("factorization of {0} failed")]
    FactorizationFailed(String),
    #[error("value has {bits} bits, factorization cap is {cap}")]
    FactorCapExceeded { bits: u64, cap: u64 },
    #[error("{e} does not divide p - 1 = {pm1}")]
    ExponentNotDivisor { e: u64, pm1: String },
    #[error("w = {w} is outside [0, v2(p-1) = {v2_pm1}]")]
    WOutOfRange { w: u64, v2_pm1: u64 },
}

/// The 2-adic valuation `v2(n)`; zero is rejected.
pub fn v2<T: Natural>(n: &T) -> Result<u64, ArithError> {
    n.trailing_zero_bits().ok_or(ArithError::ZeroArgument("v2"))
}

/// `base^exponent mod modulus` in `[0, modulus)`.
pub fn mod_pow<T: Natural>(base: &T, exponent: &T, modulus: &T) -> Result<T, ArithError> {
    if *modulus < nat(2) {
        return Err(ArithError::ModulusTooSmall);
    }
    Ok(pow_mod(base, exponent, modulus))
}

/// Unchecked square-and-multiply; `modulus >= 2` is the caller's job.
pub(crate) fn pow_mod<T: Natural>(base: &T, exponent: &T, modulus: &T) -> T {
    let two: T = nat(2);
    let mut acc = T::one() % modulus.clone();
    let mut b = base.clone() % modulus.clone();
    let mut e = exponent.clone();
    while !e.is_zero() {
        if e.is_odd() {
            acc = acc.mul_mod(&b, modulus);
        }
        e = e / two.clone();
        if !e.is_zero() {
            b = b.mul_mod(&b, modulus);
        }
    }
    acc
}

/// Legendre symbol via Euler's criterion, `p` an odd prime.
pub fn legendre<T: Natural>(n: &T, p: &T) -> i8 {
    let r = n.clone() % p.clone();
    if r.is_zero() {
        return 0;
    }
    let half = (p.clone() - T::one()) / nat(2);
    if pow_mod(&r, &half, p).is_one() {
        1
    } else {
        -1
    }
}

/// Whether `n` is an `e`-th power residue modulo the prime `p`, by testing
/// `n^((p-1)/e) = 1`. Requires `e | p - 1` and `gcd(n, p) = 1`.
pub fn eth_power_residue<T: Natural>(n: &T, p: &T, e: u64) -> Result<bool, ArithError> {
    let pm1 = p.clone() - T::one();
    let et: T = nat(e);
    if e == 0 || !(pm1.clone() % et.clone()).is_zero() {
        return Err(ArithError::ExponentNotDivisor { e, pm1: pm1.to_string() });
    }
    let r = n.clone() % p.clone();
    if r.is_zero() {
        return Err(ArithError::NotCoprime { n: n.to_string(), p: p.to_string() });
    }
    Ok(pow_mod(&r, &(pm1 / et), p).is_one())
}

/// The form constant `k` in `a^2 + k b^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormConstant {
    /// `a^2 + 64 b^2`, tied to 2 being a quartic residue.
    K64,
    /// `a^2 + 256 b^2`, tied to 2 being an octic residue.
    K256,
}

impl FormConstant {
    pub fn value(self) -> u64 {
        match self {
            FormConstant::K64 => 64,
            FormConstant::K256 => 256,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormRepresentation<T: Natural> {
    pub p: T,
    pub k: FormConstant,
    pub a: T,
    pub b: T,
}

/// Finds `p = a^2 + k b^2` with `b >= 1`, scanning `b` upward and testing
/// `p - k b^2` for an exact square. Returns the representation with the
/// smallest `b`.
pub fn represent_form<T: Natural>(p: &T, k: FormConstant) -> Option<FormRepresentation<T>> {
    let kt: T = nat(k.value());
    let mut b = T::one();
    loop {
        let kb2 = kt.clone() * b.clone() * b.clone();
        if kb2 > *p {
            return None;
        }
        let rest = p.clone() - kb2;
        let a = rest.sqrt();
        if a.clone() * a.clone() == rest {
            return Some(FormRepresentation { p: p.clone(), k, a, b });
        }
        b = b + T::one();
    }
}
