//! Periodic continued fractions of `sqrt(D)`, their convergents `P_m/Q_m`
//! with norm values `k_m = (-1)^(m+1) (P_m^2 - Q_m^2 D)`, and Pell
//! equations `h^2 - D k^2 = +-1`.
//!
//! Convergents are indexed from `m = 0` with `P_0/Q_0 = a_0/1`.

use thiserror::Error;

use crate::natural::{nat, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContFracError {
    #[error("D = {0} is a perfect square")]
    PerfectSquare(String),
    #[error("D must be at least 2")]
    TooSmall,
    #[error("arithmetic overflow in the chosen integer type")]
    Overflow,
    #[error("p = {0} must be odd")]
    EvenP(String),
    #[error("p must be at least 3")]
    DegenerateP,
    #[error("x^2 - {0} y^2 = -1 has no solution")]
    NegativePellUnsolvable(String),
    #[error("invalid expansion: {0}")]
    InvalidExpansion(&'static str),
}

/// `sqrt(D) = [a0; period]` with the minimal period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdExpansion<T: Natural> {
    d: T,
    a0: T,
    period: Vec<T>,
}

impl<T: Natural> SurdExpansion<T> {
    /// Builds an expansion from given terms, checking `a0 = floor(sqrt D)`,
    /// that the period ends in `2 a0` and that the rest is a palindrome.
    pub fn from_parts(d: T, a0: T, period: Vec<T>) -> Result<Self, ContFracError> {
        if d.sqrt() != a0 {
            return Err(ContFracError::InvalidExpansion("a0 is not floor(sqrt(D))"));
        }
        let Some((last, body)) = period.split_last() else {
            return Err(ContFracError::InvalidExpansion("empty period"));
        };
        if *last != a0.clone() * nat(2) {
            return Err(ContFracError::InvalidExpansion("period must end in 2*a0"));
        }
        if !body.iter().eq(body.iter().rev()) {
            return Err(ContFracError::InvalidExpansion("period body is not a palindrome"));
        }
        Ok(Self { d, a0, period })
    }

    pub fn d(&self) -> &T {
        &self.d
    }

    pub fn a0(&self) -> &T {
        &self.a0
    }

    pub fn period(&self) -> &[T] {
        &self.period
    }

    /// Period length `s`.
    pub fn s(&self) -> usize {
        self.period.len()
    }

    /// Partial quotient `a_m`.
    pub fn term(&self, m: usize) -> &T {
        if m == 0 {
            &self.a0
        } else {
            &self.period[(m - 1) % self.period.len()]
        }
    }

    /// The first `count` convergents with exact arithmetic.
    pub fn convergents(&self, count: usize) -> Result<Vec<Convergent<T>>, ContFracError> {
        let mut out = Vec::with_capacity(count);
        // (P_{m-2}, P_{m-1}) and (Q_{m-2}, Q_{m-1}) seeded with the m = -2, -1 values
        let (mut p2, mut p1) = (T::zero(), T::one());
        let (mut q2, mut q1) = (T::one(), T::zero());
        for m in 0..count {
            let a = self.term(m);
            let p = a.checked_mul(&p1).and_then(|v| v.checked_add(&p2)).ok_or(ContFracError::Overflow)?;
            let q = a.checked_mul(&q1).and_then(|v| v.checked_add(&q2)).ok_or(ContFracError::Overflow)?;
            let k = norm_value(&p, &q, &self.d, m)?;
            out.push(Convergent { m, p: p.clone(), q: q.clone(), k });
            p2 = std::mem::replace(&mut p1, p);
            q2 = std::mem::replace(&mut q1, q);
        }
        Ok(out)
    }
}

/// `k_m = (-1)^(m+1) (P^2 - Q^2 D)`, required to be positive.
fn norm_value<T: Natural>(p: &T, q: &T, d: &T, m: usize) -> Result<T, ContFracError> {
    let p2 = p.checked_mul(p).ok_or(ContFracError::Overflow)?;
    let q2d = q.checked_mul(q).and_then(|v| v.checked_mul(d)).ok_or(ContFracError::Overflow)?;
    let k = if m % 2 == 0 { q2d.checked_sub(&p2) } else { p2.checked_sub(&q2d) };
    match k {
        Some(k) if !k.is_zero() => Ok(k),
        _ => Err(ContFracError::InvalidExpansion("convergent norm has the wrong sign")),
    }
}

/// The `m`-th convergent `P/Q` of `sqrt(D)` and its norm value `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent<T: Natural> {
    pub m: usize,
    pub p: T,
    pub q: T,
    pub k: T,
}

impl<T: Natural> Convergent<T> {
    /// `+1` when `P^2 - Q^2 D = k`, `-1` when it equals `-k`.
    pub fn sign(&self) -> i8 {
        if self.m % 2 == 1 {
            1
        } else {
            -1
        }
    }
}

fn check_non_square<T: Natural>(d: &T) -> Result<T, ContFracError> {
    if *d < nat(2) {
        return Err(ContFracError::TooSmall);
    }
    let a0 = d.sqrt();
    if a0.clone() * a0.clone() == *d {
        return Err(ContFracError::PerfectSquare(d.to_string()));
    }
    Ok(a0)
}

/// Continued fraction of `sqrt(D)` by the integer recurrence
/// `m' = d a - m`, `d' = (D - m'^2) / d`, `a' = (a0 + m') / d'`,
/// stopping when the `(m, d)` state returns to the first periodic state.
pub fn sqrt_cf<T: Natural>(d: &T) -> Result<SurdExpansion<T>, ContFracError> {
    let a0 = check_non_square(d)?;
    let (mut m, mut den, mut a) = (T::zero(), T::one(), a0.clone());
    let mut period = Vec::new();
    let mut first: Option<(T, T)> = None;
    loop {
        m = den.clone() * a.clone() - m;
        den = (d.clone() - m.clone() * m.clone()) / den;
        match &first {
            Some((m1, d1)) if *m1 == m && *d1 == den => break,
            None => first = Some((m.clone(), den.clone())),
            _ => {}
        }
        a = (a0.clone() + m.clone()) / den.clone();
        period.push(a.clone());
    }
    Ok(SurdExpansion { d: d.clone(), a0, period })
}

pub fn convergents<T: Natural>(d: &T, count: usize) -> Result<Vec<Convergent<T>>, ContFracError> {
    sqrt_cf(d)?.convergents(count)
}

/// Whether `k_{n s + j} = k_j` for every `j < s` and `n` in `1..=n_periods`.
pub fn k_periodicity_check<T: Natural>(d: &T, n_periods: usize) -> Result<bool, ContFracError> {
    let cf = sqrt_cf(d)?;
    let s = cf.s();
    let conv = cf.convergents((n_periods + 1) * s)?;
    Ok((1..=n_periods).all(|n| (0..s).all(|j| conv[n * s + j].k == conv[j].k)))
}

/// Closed-form expansion and first five convergents of `sqrt(p^(2n) + 4)`
/// for odd `p >= 3`, built directly from `p^n` without running the
/// expansion:
///
/// `sqrt(D) = [p^n; (p^n-1)/2, 1, 1, (p^n-1)/2, 2 p^n]`, with norm values
/// `(4, p^n, p^n, 4, 1)`.
pub fn lemma35_expected<T: Natural>(
    p: &T,
    n: u32,
) -> Result<(SurdExpansion<T>, [Convergent<T>; 5]), ContFracError> {
    if p.is_even() {
        return Err(ContFracError::EvenP(p.to_string()));
    }
    if *p < nat(3) || n == 0 {
        return Err(ContFracError::DegenerateP);
    }
    let two: T = nat(2);
    let pn = p.checked_pow_n(n).ok_or(ContFracError::Overflow)?;
    let pn2 = pn.checked_mul(&pn).ok_or(ContFracError::Overflow)?;
    let d = pn2.checked_add(&nat(4)).ok_or(ContFracError::Overflow)?;
    let half_down = (pn.clone() - T::one()) / two.clone();
    let half_up = (pn.clone() + T::one()) / two.clone();

    let period = vec![half_down.clone(), T::one(), T::one(), half_down.clone(), two.clone() * pn.clone()];
    let expansion = SurdExpansion { d, a0: pn.clone(), period };

    let four: T = nat(4);
    let p4 = (pn2.clone() + nat(3)).checked_mul(&pn).ok_or(ContFracError::Overflow)? / two.clone();
    let conv = [
        Convergent { m: 0, p: pn.clone(), q: T::one(), k: four.clone() },
        Convergent {
            m: 1,
            p: (pn2.clone() - pn.clone() + two.clone()) / two.clone(),
            q: half_down,
            k: pn.clone(),
        },
        Convergent {
            m: 2,
            p: (pn2.clone() + pn.clone() + two.clone()) / two.clone(),
            q: half_up,
            k: pn.clone(),
        },
        Convergent { m: 3, p: pn2.clone() + two.clone(), q: pn.clone(), k: four },
        Convergent { m: 4, p: p4, q: (pn2 + T::one()) / two, k: T::one() },
    ];
    Ok((expansion, conv))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PellNorm {
    Plus,
    Minus,
}

impl PellNorm {
    pub fn value(self) -> i8 {
        match self {
            PellNorm::Plus => 1,
            PellNorm::Minus => -1,
        }
    }
}

/// A positive solution of `h^2 - D k^2 = norm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution<T: Natural> {
    pub d: T,
    pub h: T,
    pub k: T,
    pub norm: PellNorm,
    pub fundamental: bool,
}

impl<T: Natural> PellSolution<T> {
    /// `(h + k sqrt D)(other.h + other.k sqrt D)` in `Z[sqrt D]`.
    fn times(&self, h: &T, k: &T) -> Result<(T, T), ContFracError> {
        let of = ContFracError::Overflow;
        let hh = self.h.checked_mul(h).ok_or(of.clone())?;
        let dkk = self.d.checked_mul(&self.k).and_then(|v| v.checked_mul(k)).ok_or(of.clone())?;
        let hk = self.h.checked_mul(k).ok_or(of.clone())?;
        let kh = self.k.checked_mul(h).ok_or(of.clone())?;
        Ok((hh.checked_add(&dkk).ok_or(of.clone())?, hk.checked_add(&kh).ok_or(of)?))
    }

    /// `(h + k sqrt D)^j` for `j >= 1`; its norm is `norm^j`.
    pub fn power(&self, j: u32) -> Result<PellSolution<T>, ContFracError> {
        assert!(j >= 1, "power must be positive");
        let (mut h, mut k) = (self.h.clone(), self.k.clone());
        for _ in 1..j {
            (h, k) = self.times(&h, &k)?;
        }
        let norm = if self.norm == PellNorm::Minus && j % 2 == 1 { PellNorm::Minus } else { PellNorm::Plus };
        Ok(PellSolution { d: self.d.clone(), h, k, norm, fundamental: j == 1 && self.fundamental })
    }

    /// Exact check of `h^2 - D k^2 = norm`.
    pub fn verify(&self) -> bool {
        let h2 = self.h.clone() * self.h.clone();
        let dk2 = self.d.clone() * self.k.clone() * self.k.clone();
        match self.norm {
            PellNorm::Plus => h2 == dk2 + T::one(),
            PellNorm::Minus => h2 + T::one() == dk2,
        }
    }
}

/// Fundamental solution of `h^2 - D k^2 = norm`, read off the convergent
/// `P_{s-1}/Q_{s-1}` at the end of the first period.
///
/// Odd period: that convergent solves the `-1` equation and its square is
/// the `+1` fundamental. Even period: the `-1` equation is unsolvable and
/// the convergent is the `+1` fundamental.
pub fn pell_fundamental<T: Natural>(d: &T, norm: PellNorm) -> Result<Option<PellSolution<T>>, ContFracError> {
    let cf = sqrt_cf(d)?;
    let s = cf.s();
    let last = cf.convergents(s)?.pop().expect("period is non-empty");
    let base = PellSolution {
        d: d.clone(),
        h: last.p,
        k: last.q,
        norm: if s % 2 == 1 { PellNorm::Minus } else { PellNorm::Plus },
        fundamental: true,
    };
    Ok(match (norm, base.norm) {
        (PellNorm::Minus, PellNorm::Minus) | (PellNorm::Plus, PellNorm::Plus) => Some(base),
        (PellNorm::Minus, PellNorm::Plus) => None,
        (PellNorm::Plus, PellNorm::Minus) => {
            let mut sq = base.power(2)?;
            sq.fundamental = true;
            Some(sq)
        }
    })
}

/// Whether every prime divisor of `h1` (from the fundamental `-1` solution)
/// divides `V` in each of the first `n_powers` solutions of `U^2 - D V^2 = 1`.
///
/// Implemented without factoring `h1`: the common part with `V` is stripped
/// off repeatedly, and every prime of `h1` divides `V` iff nothing remains.
pub fn lemma32_check<T: Natural>(d: &T, n_powers: u32) -> Result<bool, ContFracError> {
    let neg = pell_fundamental(d, PellNorm::Minus)?
        .ok_or_else(|| ContFracError::NegativePellUnsolvable(d.to_string()))?;
    let plus = neg.power(2)?;
    for j in 1..=n_powers {
        let v = plus.power(j)?.k;
        if !radical_divides(&neg.h, &v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every prime dividing `h` also divides `v`.
fn radical_divides<T: Natural>(h: &T, v: &T) -> bool {
    let mut rest = h.clone();
    loop {
        let g = rest.gcd(v);
        if g.is_one() {
            return rest.is_one();
        }
        while (rest.clone() % g.clone()).is_zero() {
            rest = rest / g.clone();
        }
    }
}

/// Pairs `(x, y, |x^2 - y^2 D|)` with `1 <= y <= y_bound`, `gcd(x, yD) = 1`
/// and `|x^2 - y^2 D| < sqrt(D)` whose norm is *not* among `k_0..k_{s-1}`.
pub fn small_norm_violations<T: Natural>(d: &T, y_bound: u64) -> Result<Vec<(T, T, T)>, ContFracError> {
    let cf = sqrt_cf(d)?;
    let ks: Vec<T> = cf.convergents(cf.s())?.into_iter().map(|c| c.k).collect();
    let mut bad = Vec::new();
    for y in 1..=y_bound {
        let y: T = nat(y);
        let yd = y.checked_mul(d).ok_or(ContFracError::Overflow)?;
        let y2d = yd.checked_mul(&y).ok_or(ContFracError::Overflow)?;
        let x0 = y2d.sqrt();
        let lo = if x0 > T::one() { x0.clone() - T::one() } else { T::one() };
        let mut x = lo;
        while x <= x0.clone() + T::one() {
            let x2 = x.checked_mul(&x).ok_or(ContFracError::Overflow)?;
            let diff = if x2 >= y2d { x2 - y2d.clone() } else { y2d.clone() - x2 };
            let small = diff.checked_mul(&diff).ok_or(ContFracError::Overflow)? < *d;
            if small && x.gcd(&yd).is_one() && !ks.contains(&diff) {
                bad.push((x.clone(), y.clone(), diff));
            }
            x = x + T::one();
        }
    }
    Ok(bad)
}

/// Whether every coprime small-norm pair up to `y_bound` has its norm among
/// `k_0..k_{s-1}`.
pub fn small_norm_classification<T: Natural>(d: &T, y_bound: u64) -> Result<bool, ContFracError> {
    Ok(small_norm_violations(d, y_bound)?.is_empty())
}
