//! Bounded exhaustive search for positive solutions of `a^x + b^y = c^z`.
//!
//! The scan runs `z` outermost and `x` inside; for each pair the remainder
//! `c^z - a^x` is tested for being a power of `b` by exact division. When
//! `b` fits in a machine word the remainder's residue modulo `b` is tracked
//! incrementally so that big-integer work happens only for candidates
//! already divisible by `b`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::is_prime;
use crate::natural::{nat, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("a, b, c must be pairwise distinct")]
    NotDistinct,
    #[error("require 1 < a < b (got a = {a}, b = {b})")]
    OrderViolated { a: String, b: String },
    #[error("gcd(a, b) = {0}, must be 1")]
    NotCoprime(String),
    #[error("{0} is a perfect power")]
    PerfectPower(String),
    #[error("every base must be at least 2")]
    TooSmall,
    #[error("c has {c_bits} bits but max_bits is {max_bits}")]
    BoundsTooSmall { c_bits: u64, max_bits: u64 },
    #[error("bounds must be positive")]
    InvalidBounds,
    #[error("the two bases must differ")]
    SameBase,
    #[error("{0} must be an odd prime")]
    NotOddPrime(String),
    #[error("k must be at least 1")]
    ZeroExponent,
}

/// Side conditions on `(a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// `a, b, c` distinct primes with `a < b`.
    #[serde(rename = "S")]
    Prime,
    /// `gcd(a, b) = 1`, `b > a > 1`, none of `a, b, c` a perfect power.
    #[serde(rename = "N")]
    Coprime,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Prime => "S",
            Mode::Coprime => "N",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationInstance<T: Natural> {
    a: T,
    b: T,
    c: T,
    mode: Mode,
}

impl<T: Natural> EquationInstance<T> {
    pub fn new(a: T, b: T, c: T, mode: Mode) -> Result<Self, SolverError> {
        let two: T = nat(2);
        if a < two || b < two || c < two {
            return Err(SolverError::TooSmall);
        }
        match mode {
            Mode::Prime => {
                for v in [&a, &b, &c] {
                    if !is_prime(v) {
                        return Err(SolverError::NotPrime(v.to_string()));
                    }
                }
                if a == b || b == c || a == c {
                    return Err(SolverError::NotDistinct);
                }
                if a >= b {
                    return Err(SolverError::OrderViolated { a: a.to_string(), b: b.to_string() });
                }
            }
            Mode::Coprime => {
                if a >= b {
                    return Err(SolverError::OrderViolated { a: a.to_string(), b: b.to_string() });
                }
                let g = a.gcd(&b);
                if !g.is_one() {
                    return Err(SolverError::NotCoprime(g.to_string()));
                }
                for v in [&a, &b, &c] {
                    if is_perfect_power(v) {
                        return Err(SolverError::PerfectPower(v.to_string()));
                    }
                }
            }
        }
        Ok(Self { a, b, c, mode })
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_z: u32,
    /// Largest admissible bit length of `c^z`.
    pub max_bits: u64,
}

impl SearchBounds {
    pub fn new(max_z: u32, max_bits: u64) -> Result<Self, SolverError> {
        if max_z == 0 || max_bits == 0 {
            return Err(SolverError::InvalidBounds);
        }
        Ok(Self { max_z, max_bits })
    }

    /// Bounds used for the published solution tables.
    pub fn golden() -> Self {
        Self { max_z: 25, max_bits: 256 }
    }

    /// Bounds used for desk-scale scans over many triples.
    pub fn desk() -> Self {
        Self { max_z: 20, max_bits: 200 }
    }
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self { max_z: 25, max_bits: 512 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SolutionTriple {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl SolutionTriple {
    pub fn new(x: u32, y: u32, z: u32) -> Self {
        Self { x, y, z }
    }

    /// `(z, x)` ordering used for reports.
    pub fn sort_key(&self) -> (u32, u32) {
        (self.z, self.x)
    }

    /// Exact check in big integers, independent of the scan.
    pub fn verify<T: Natural>(&self, a: &T, b: &T, c: &T) -> bool {
        let (a, b, c) = (a.to_big(), b.to_big(), c.to_big());
        a.pow(self.x) + b.pow(self.y) == c.pow(self.z)
    }
}

impl fmt::Display for SolutionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet<T: Natural> {
    pub instance: EquationInstance<T>,
    pub bounds: SearchBounds,
    /// Sorted by `(z, x)`.
    pub solutions: Vec<SolutionTriple>,
    /// False only if the integer type overflowed before the bounds were reached.
    pub exhaustive_within_bounds: bool,
}

/// `y >= 1` with `b^y = r`, by repeated exact division.
pub fn is_power_of<T: Natural>(r: &T, b: &T) -> Option<u32> {
    if *b < nat(2) || r.is_zero() {
        return None;
    }
    let mut rest = r.clone();
    let mut y = 0u32;
    loop {
        let (q, rem) = rest.div_rem(b);
        if !rem.is_zero() {
            break;
        }
        rest = q;
        y += 1;
    }
    (y >= 1 && rest.is_one()).then_some(y)
}

/// Whether `n = r^k` for some `r >= 2`, `k >= 2`.
pub fn is_perfect_power<T: Natural>(n: &T) -> bool {
    if *n < nat(4) {
        return false;
    }
    let max_k = n.bit_length() as u32;
    (2..=max_k).any(|k| {
        let r = n.nth_root(k);
        r >= nat(2) && r.checked_pow_n(k).is_some_and(|v| v == *n)
    })
}

/// Powers `base^0, base^1, ...` while the bit length stays `<= max_bits`.
fn powers_upto<T: Natural>(base: &T, max_bits: u64) -> (Vec<T>, bool) {
    let mut out = vec![T::one()];
    loop {
        let last = out.last().expect("non-empty");
        match last.checked_mul(base) {
            Some(next) if next.bit_length() <= max_bits => out.push(next),
            Some(_) => return (out, true),
            None => return (out, false),
        }
    }
}

/// Every solution with `z <= max_z` and `c^z` of at most `max_bits` bits.
pub fn find_solutions<T: Natural>(
    instance: &EquationInstance<T>,
    bounds: SearchBounds,
) -> Result<SolutionSet<T>, SolverError> {
    let (a, b, c) = (&instance.a, &instance.b, &instance.c);
    if c.bit_length() > bounds.max_bits {
        return Err(SolverError::BoundsTooSmall { c_bits: c.bit_length(), max_bits: bounds.max_bits });
    }
    let (c_pows, c_complete) = powers_upto(c, bounds.max_bits);
    // a^x < c^z, so a power of a that overflows T is out of range anyway
    let (a_pows, _) = powers_upto(a, bounds.max_bits);
    let exhaustive = c_complete || c_pows.len() > bounds.max_z as usize;

    let b_word = b.to_u64();
    let residues = |pows: &[T]| -> Option<Vec<u64>> {
        let m = b_word?;
        Some(pows.iter().map(|v| (v.clone() % nat::<T>(m)).to_u64().expect("below b")).collect())
    };
    let a_res = residues(&a_pows);
    let c_res = residues(&c_pows);

    let mut solutions = Vec::new();
    for (z, cz) in c_pows.iter().enumerate().skip(1).take(bounds.max_z as usize) {
        for (x, ax) in a_pows.iter().enumerate().skip(1) {
            if ax >= cz {
                break;
            }
            if let (Some(ar), Some(cr)) = (&a_res, &c_res) {
                if ar[x] != cr[z] {
                    continue;
                }
            }
            let rest = cz.clone() - ax.clone();
            if let Some(y) = is_power_of(&rest, b) {
                solutions.push(SolutionTriple::new(x as u32, y, z as u32));
            }
        }
    }
    solutions.sort_by_key(SolutionTriple::sort_key);
    solutions.dedup();
    Ok(SolutionSet { instance: instance.clone(), bounds, solutions, exhaustive_within_bounds: exhaustive })
}

pub fn count_solutions<T: Natural>(instance: &EquationInstance<T>, bounds: SearchBounds) -> Result<usize, SolverError> {
    Ok(find_solutions(instance, bounds)?.solutions.len())
}

/// Number of `(m, n)` with `1 <= m <= m_max`, `1 <= n <= n_max` and
/// `q^n - p^m = 2^k`, for distinct odd primes `p`, `q`.
pub fn lemma21_scan<T: Natural>(p: &T, q: &T, k: u32, m_max: u32, n_max: u32) -> Result<usize, SolverError> {
    for v in [p, q] {
        if v.is_even() || !is_prime(v) {
            return Err(SolverError::NotOddPrime(v.to_string()));
        }
    }
    if p == q {
        return Err(SolverError::SameBase);
    }
    if k == 0 {
        return Err(SolverError::ZeroExponent);
    }
    let (p, q) = (p.to_big(), q.to_big());
    let two_k = BigUint::from(1u32) << k;
    let mut count = 0;
    let mut qn = BigUint::from(1u32);
    for _ in 1..=n_max {
        qn *= &q;
        if qn > two_k {
            let rest = qn.clone() - two_k.clone();
            if is_power_of(&rest, &p).is_some_and(|m| m <= m_max) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Number of `(z, y)` in the box with `0 < |c^z - b^y|` and
/// `16 (c^z - b^y)^2 < max(c^z, b^y)`, the squared form of
/// `|c^z - b^y| < max(c^(z/2), b^(y/2)) / 4`.
pub fn lemma22_scan<T: Natural>(b: &T, c: &T, y_max: u32, z_max: u32) -> Result<usize, SolverError> {
    if *b < nat(2) || *c < nat(2) {
        return Err(SolverError::TooSmall);
    }
    if b == c {
        return Err(SolverError::SameBase);
    }
    let (b, c) = (b.to_big(), c.to_big());
    let b_pows: Vec<_> = (1..=y_max).map(|y| b.pow(y)).collect();
    let mut count = 0;
    for z in 1..=z_max {
        let cz = c.pow(z);
        for by in &b_pows {
            let (hi, lo) = if cz >= *by { (&cz, by) } else { (by, &cz) };
            let diff = hi - lo;
            if diff.bits() == 0 || 2 * diff.bits() > hi.bits() + 4 {
                continue;
            }
            let sixteen_sq = &diff * &diff * 16u32;
            if sixteen_sq < *hi {
                count += 1;
            }
        }
    }
    Ok(count)
}
