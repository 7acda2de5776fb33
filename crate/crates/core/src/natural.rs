//! The unsigned integer scalar every algorithm in this crate is generic over.
//!
//! `u64` and `u128` are fast paths for values that provably fit; `BigUint`
//! is the arbitrary-precision default. Operations that can leave the range
//! of a fixed-width type use the checked arithmetic bounds and surface an
//! overflow error instead of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive, Unsigned};

pub trait Natural:
    Integer
    + Unsigned
    + Roots
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    /// `self * rhs mod modulus` without intermediate overflow.
    fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self;

    /// Number of significant bits; 0 for zero.
    fn bit_length(&self) -> u64;

    fn to_big(&self) -> BigUint;

    /// `None` when the value does not fit.
    fn from_big(value: &BigUint) -> Option<Self>;

    fn from_u64_lossless(v: u64) -> Self {
        Self::from_u64(v).expect("every Natural holds u64")
    }

    fn trailing_zero_bits(&self) -> Option<u64>;

    /// Exact `self^exp`, or `None` on overflow.
    fn checked_pow_n(&self, mut exp: u32) -> Option<Self> {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Some(acc)
    }
}

impl Natural for u64 {
    fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self {
        ((*self as u128 * *rhs as u128) % *modulus as u128) as u64
    }

    fn bit_length(&self) -> u64 {
        (64 - self.leading_zeros()) as u64
    }

    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }

    fn from_big(value: &BigUint) -> Option<Self> {
        value.to_u64()
    }

    fn trailing_zero_bits(&self) -> Option<u64> {
        (*self != 0).then(|| self.trailing_zeros() as u64)
    }
}

impl Natural for u128 {
    fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self {
        let m = *modulus;
        let (mut a, mut b) = (*self % m, *rhs % m);
        if let Some(p) = a.checked_mul(b) {
            return p % m;
        }
        // double-and-add; every intermediate stays below m
        let mut acc = 0u128;
        while b > 0 {
            if b & 1 == 1 {
                acc = add_mod_u128(acc, a, m);
            }
            a = add_mod_u128(a, a, m);
            b >>= 1;
        }
        acc
    }

    fn bit_length(&self) -> u64 {
        (128 - self.leading_zeros()) as u64
    }

    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }

    fn from_big(value: &BigUint) -> Option<Self> {
        value.to_u128()
    }

    fn trailing_zero_bits(&self) -> Option<u64> {
        (*self != 0).then(|| self.trailing_zeros() as u64)
    }
}

fn add_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    let gap = m - a;
    if b >= gap {
        b - gap
    } else {
        a + b
    }
}

impl Natural for BigUint {
    fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self {
        (self * rhs) % modulus
    }

    fn bit_length(&self) -> u64 {
        self.bits()
    }

    fn to_big(&self) -> BigUint {
        self.clone()
    }

    fn from_big(value: &BigUint) -> Option<Self> {
        Some(value.clone())
    }

    fn trailing_zero_bits(&self) -> Option<u64> {
        self.trailing_zeros()
    }
}

/// Parses a decimal string into any [`Natural`], rejecting values that do not fit.
pub fn parse_decimal<T: Natural>(text: &str) -> Option<T> {
    let trimmed = text.trim();
    if trimmed.is_empty() || !trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let big = trimmed.parse::<BigUint>().ok()?;
    T::from_big(&big)
}

pub(crate) fn nat<T: Natural>(v: u64) -> T {
    T::from_u64_lossless(v)
}
