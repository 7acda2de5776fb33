//! Discrete-log indices relative to a primitive root and the 2-adic
//! invariant `w_p(n) = min(v2(i_p(n)), v2(p - 1))`.

use std::collections::HashMap;

use super::modulus::PrimeModulus;
use super::{pow_mod, ArithError};
use crate::natural::{nat, Natural};

/// Baby-step giant-step is limited to primes below this bound; the baby
/// table holds about `2^25` entries at the cap.
pub const INDEX_CAP: u64 = 1 << 50;

/// Precomputed baby-step table for one `(p, d)`; answers many index queries.
#[derive(Clone, Debug)]
pub struct IndexTable {
    p: u64,
    d: u64,
    step: u64,
    baby: HashMap<u64, u64>,
    giant: u64,
    v2_pm1: u64,
}

impl IndexTable {
    pub fn new<T: Natural>(modulus: &PrimeModulus<T>, d: &T) -> Result<Self, ArithError> {
        let p = modulus
            .prime()
            .to_u64()
            .filter(|&p| p < INDEX_CAP)
            .ok_or_else(|| ArithError::IndexCapExceeded(modulus.prime().to_string()))?;
        if !modulus.is_primitive_root(d) {
            return Err(ArithError::NotPrimitiveRoot { d: d.to_string(), p: p.to_string() });
        }
        let d = modulus.reduce(d).to_u64().expect("reduced below p");
        let order = p - 1;
        let step = order.sqrt_ceil();
        let mut baby = HashMap::with_capacity(step as usize);
        let mut cur = 1u64;
        for j in 0..step {
            baby.entry(cur).or_insert(j);
            cur = cur.mul_mod(&d, &p);
        }
        // d^(-step) = d^(order - step)
        let giant = pow_mod(&d, &((order - step % order) % order), &p);
        Ok(Self { p, d, step, baby, giant, v2_pm1: modulus.v2_p_minus_one() })
    }

    /// Table for the smallest primitive root of `modulus`.
    pub fn for_smallest_root<T: Natural>(modulus: &PrimeModulus<T>) -> Result<Self, ArithError> {
        Self::new(modulus, &modulus.find_primitive_root())
    }

    pub fn root(&self) -> u64 {
        self.d
    }

    /// i_p(n) in `(0, p - 1]`; the index of 1 is `p - 1`.
    pub fn index(&self, n: u64) -> Result<u64, ArithError> {
        let target = n % self.p;
        if target == 0 {
            return Err(ArithError::NotCoprime { n: n.to_string(), p: self.p.to_string() });
        }
        let mut gamma = target;
        for i in 0..self.step {
            if let Some(&j) = self.baby.get(&gamma) {
                let e = (i * self.step + j) % (self.p - 1);
                return Ok(if e == 0 { self.p - 1 } else { e });
            }
            gamma = gamma.mul_mod(&self.giant, &self.p);
        }
        unreachable!("primitive root generates every unit")
    }

    pub fn w(&self, n: u64) -> Result<u64, ArithError> {
        let i = self.index(n)?;
        Ok((i.trailing_zeros() as u64).min(self.v2_pm1))
    }
}

trait SqrtCeil {
    fn sqrt_ceil(self) -> Self;
}

impl SqrtCeil for u64 {
    fn sqrt_ceil(self) -> u64 {
        let r = num_integer::Roots::sqrt(&self);
        if r * r == self {
            r.max(1)
        } else {
            r + 1
        }
    }
}

/// Index of `n` to base `d` modulo `modulus`, in `(0, p - 1]`.
pub fn index<T: Natural>(n: &T, modulus: &PrimeModulus<T>, d: &T) -> Result<T, ArithError> {
    let table = IndexTable::new(modulus, d)?;
    let n = modulus.reduce(n).to_u64().expect("reduced below p < 2^50");
    table.index(n).map(nat)
}

/// w_p(n), computed against the smallest primitive root. The value does not
/// depend on which root is used.
pub fn w<T: Natural>(n: &T, modulus: &PrimeModulus<T>) -> Result<u64, ArithError> {
    let table = IndexTable::for_smallest_root(modulus)?;
    let n = modulus.reduce(n).to_u64().expect("reduced below p < 2^50");
    table.w(n)
}

/// Everything known about one residue's index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexProfile<T: Natural> {
    pub modulus: PrimeModulus<T>,
    pub n: T,
    pub d: T,
    pub i: T,
    pub w: u64,
}

impl<T: Natural> IndexProfile<T> {
    pub fn new(n: &T, modulus: &PrimeModulus<T>) -> Result<Self, ArithError> {
        let table = IndexTable::for_smallest_root(modulus)?;
        let reduced = modulus.reduce(n);
        let small = reduced.to_u64().expect("reduced below p < 2^50");
        let i = table.index(small)?;
        let w = (i.trailing_zeros() as u64).min(modulus.v2_p_minus_one());
        Ok(Self { modulus: modulus.clone(), n: reduced, d: nat(table.root()), i: nat(i), w })
    }
}

/// The w-value of `-a` predicted from `w(a)` and `v2(p - 1)`, using
/// `v2((p - 1) / 2) = v2(p - 1) - 1`.
pub fn predicted_w_of_negation(w_a: u64, v2_pm1: u64) -> Result<u64, ArithError> {
    if v2_pm1 == 0 || w_a > v2_pm1 {
        return Err(ArithError::WOutOfRange { w: w_a, v2_pm1 });
    }
    Ok(if w_a + 1 < v2_pm1 {
        w_a
    } else if w_a + 1 == v2_pm1 {
        v2_pm1
    } else {
        v2_pm1 - 1
    })
}
