//! abc quality `log c / log rad(abc)` with logarithms evaluated in exact
//! fixed-point arithmetic.

use num_bigint::BigUint;
use num_traits::{Float, One, ToPrimitive, Zero};

use super::SieveError;
use crate::arith::radical;
use crate::natural::{nat, Natural};

/// Factorization cap for the terms of an abc triple.
pub const ABC_FACTOR_CAP_BITS: u64 = 80;

const GUARD_BITS: u64 = 32;
const LOW_PRECISION: u64 = 64;
const HIGH_PRECISION: u64 = 128;

#[derive(Clone, Debug, PartialEq)]
pub struct AbcTriple<T: Natural> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub rad: T,
    pub quality: f64,
}

// 2 * atanh(y) for 0 <= y < 1, y and the result scaled by 2^bits.
fn two_atanh(y: &BigUint, bits: u64) -> BigUint {
    let y2 = (y * y) >> bits;
    let mut term = y.clone();
    let mut sum = BigUint::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        sum += &term / k;
        term = (term * &y2) >> bits;
        k += 2;
    }
    sum << 1
}

/// `ln n` scaled by `2^frac_bits`, truncated; `n >= 1`.
pub fn ln_fixed(n: &BigUint, frac_bits: u64) -> BigUint {
    assert!(!n.is_zero(), "ln of zero");
    let bits = frac_bits + GUARD_BITS;
    let one = BigUint::one() << bits;
    // n = 2^e * m with 1 <= m < 2
    let e = n.bits() - 1;
    let m = (n << bits) >> e;
    let y = ((&m - &one) << bits) / (&m + &one);
    let ln_m = two_atanh(&y, bits);
    // ln 2 = 2 atanh(1/3)
    let ln2 = two_atanh(&(&one / 3u32), bits);
    (ln2 * e + ln_m) >> GUARD_BITS
}

/// Natural logarithm of an arbitrary-size integer as a float.
pub fn ln_natural<F: Float, T: Natural>(n: &T) -> F {
    let fixed = ln_fixed(&n.to_big(), LOW_PRECISION);
    let scale = F::from(2.0f64).expect("float").powi(LOW_PRECISION as i32);
    F::from(fixed.to_f64().expect("finite")).expect("float") / scale
}

/// `ln c / ln rad` with both logs at `frac_bits` fractional bits; the
/// quotient is formed in fixed point before converting.
pub fn quality_at_precision(c: &BigUint, rad: &BigUint, frac_bits: u64) -> f64 {
    let lc = ln_fixed(c, frac_bits);
    let lr = ln_fixed(rad, frac_bits);
    let q = (lc << frac_bits) / lr;
    q.to_f64().expect("finite") / 2f64.powi(frac_bits as i32)
}

/// Quality of the triple `a + b = c`, with `a, b` coprime and `c` below
/// `2^80`.
pub fn abc_quality<T: Natural>(a: &T, b: &T, c: &T) -> Result<AbcTriple<T>, SieveError> {
    if a.is_zero() || b.is_zero() {
        return Err(SieveError::AbcInput("terms must be positive".into()));
    }
    if a.clone().checked_add(b) != Some(c.clone()) {
        return Err(SieveError::AbcInput(format!("{a} + {b} != {c}")));
    }
    if !a.gcd(b).is_one() {
        return Err(SieveError::AbcInput(format!("{a} and {b} are not coprime")));
    }
    let bits = c.bit_length();
    if bits > ABC_FACTOR_CAP_BITS {
        return Err(crate::arith::ArithError::FactorCapExceeded { bits, cap: ABC_FACTOR_CAP_BITS }.into());
    }
    // pairwise coprime, so the radical of the product is the product of radicals
    let mut rad = BigUint::one();
    for v in [a, b, c] {
        rad *= radical(v, ABC_FACTOR_CAP_BITS)?.to_big();
    }
    let cb = c.to_big();
    let low = quality_at_precision(&cb, &rad, LOW_PRECISION);
    let high = quality_at_precision(&cb, &rad, HIGH_PRECISION);
    if (low - high).abs() > 1e-12 {
        return Err(SieveError::PrecisionMismatch(low.to_string(), high.to_string()));
    }
    let rad = T::from_big(&rad).ok_or_else(|| SieveError::AbcInput("radical overflows the scalar type".into()))?;
    Ok(AbcTriple { a: a.clone(), b: b.clone(), c: c.clone(), rad, quality: high })
}

/// Upper bound on the quality of `2^x2 + p^y2 = q^z2` from the size of `q`:
/// `z2 ln q / (1.5 ln q + ln 2)`.
pub fn eq13_quality_bound<F: Float, T: Natural>(q: &T, z2: u64) -> Result<F, SieveError> {
    if *q < nat(2) {
        return Err(SieveError::AbcInput("q must be at least 2".into()));
    }
    if z2 < 3 || z2 % 2 == 0 {
        return Err(SieveError::InvalidShape("z2 must be odd and greater than 1"));
    }
    let lq: F = ln_natural(q);
    let ln2: F = ln_natural(&nat::<T>(2));
    let z = F::from(z2).expect("float");
    let three_halves = F::from(1.5f64).expect("float");
    Ok(z * lq / (three_halves * lq + ln2))
}
